#pragma once

#include "nmc/bits.hpp"
#include "nmc/rng.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace nmc {

class GF2Matrix {
public:
    GF2Matrix() = default;
    GF2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_(BitString::nwords(cols)), data_(rows * stride_, 0) {}

    static GF2Matrix identity(std::size_t n);
    static GF2Matrix from_rows(const std::vector<BitString>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t stride() const { return stride_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * stride_ + (c >> 6)] >> (63 - (c & 63))) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        uint64_t m = uint64_t{1} << (63 - (c & 63));
        uint64_t& w = data_[r * stride_ + (c >> 6)];
        if (v) w |= m; else w &= ~m;
    }
    uint64_t* row(std::size_t r) { return data_.data() + r * stride_; }
    const uint64_t* row(std::size_t r) const { return data_.data() + r * stride_; }
    BitString row_bits(std::size_t r) const;
    void set_row(std::size_t r, const BitString& v);
    void xor_row(std::size_t dst, std::size_t src);

    // Appends a row; returns its index.
    std::size_t add_row(const BitString& v);

    BitString apply(const BitString& x) const;
    GF2Matrix transpose() const;

    bool operator==(const GF2Matrix& o) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
    std::vector<uint64_t> data_;
};

std::size_t rank(GF2Matrix A);

struct AffineSubspace {
    std::size_t ambient_len = 0;
    BitString offset;
    std::vector<BitString> basis;

    std::size_t dim() const { return basis.size(); }
    // Requires dim() <= 24.
    std::vector<BitString> enumerate() const;
};

struct NoSolution {};

std::variant<AffineSubspace, NoSolution> solve_affine(const GF2Matrix& A, const BitString& b);
BitString sample_subspace(const AffineSubspace& S, Rng& rng);

// Reduced row-echelon form of A kept together with the row operations applied,
// so many right-hand sides can be solved or sampled against one factorization.
class LinearSystem {
public:
    explicit LinearSystem(const GF2Matrix& A);

    std::size_t rank() const { return pivots_.size(); }
    std::size_t cols() const { return cols_; }
    std::size_t rows() const { return rows_; }
    std::size_t solution_dim() const { return cols_ - pivots_.size(); }

    bool consistent(const BitString& b) const;
    std::optional<BitString> sample(const BitString& b, Rng& rng) const;
    std::optional<BitString> particular(const BitString& b) const;
    std::variant<AffineSubspace, NoSolution> solve(const BitString& b) const;

private:
    BitString reduce_rhs(const BitString& b) const;
    std::optional<BitString> back_substitute(const BitString& rb, const BitString& free_assignment) const;

    std::size_t rows_, cols_;
    GF2Matrix reduced_;   // rank rows of RREF(A)
    GF2Matrix ops_;       // rows x rows: reduced rhs = ops * b (first rank rows), remaining rows must vanish
    std::vector<std::size_t> pivots_;
    BitString pivot_mask_;
};

}  // namespace nmc
