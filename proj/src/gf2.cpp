#include "nmc/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace nmc {

GF2Matrix GF2Matrix::identity(std::size_t n) {
    GF2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

GF2Matrix GF2Matrix::from_rows(const std::vector<BitString>& rows, std::size_t cols) {
    GF2Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
}

BitString GF2Matrix::row_bits(std::size_t r) const {
    BitString out(cols_);
    std::copy(row(r), row(r) + stride_, out.words());
    return out;
}

void GF2Matrix::set_row(std::size_t r, const BitString& v) {
    if (v.size() != cols_) throw std::length_error("row length mismatch");
    std::copy(v.words(), v.words() + stride_, row(r));
}

void GF2Matrix::xor_row(std::size_t dst, std::size_t src) {
    uint64_t* d = row(dst);
    const uint64_t* s = row(src);
    for (std::size_t k = 0; k < stride_; ++k) d[k] ^= s[k];
}

std::size_t GF2Matrix::add_row(const BitString& v) {
    if (v.size() != cols_) throw std::length_error("row length mismatch");
    data_.insert(data_.end(), v.words(), v.words() + stride_);
    return rows_++;
}

BitString GF2Matrix::apply(const BitString& x) const {
    if (x.size() != cols_) throw std::length_error("matrix-vector dimension mismatch");
    BitString out(rows_);
    const uint64_t* xv = x.words();
    for (std::size_t r = 0; r < rows_; ++r) {
        const uint64_t* rv = row(r);
        uint64_t acc = 0;
        for (std::size_t k = 0; k < stride_; ++k) acc ^= rv[k] & xv[k];
        if (std::popcount(acc) & 1) out.set(r, true);
    }
    return out;
}

GF2Matrix GF2Matrix::transpose() const {
    GF2Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c)) t.set(c, r, true);
    return t;
}

std::size_t rank(GF2Matrix A) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < A.cols() && r < A.rows(); ++c) {
        std::size_t p = r;
        while (p < A.rows() && !A.get(p, c)) ++p;
        if (p == A.rows()) continue;
        if (p != r) {
            A.xor_row(r, p);
        }
        for (std::size_t i = r + 1; i < A.rows(); ++i)
            if (A.get(i, c)) A.xor_row(i, r);
        ++r;
    }
    return r;
}

std::vector<BitString> AffineSubspace::enumerate() const {
    if (dim() > 24) throw std::length_error("subspace too large to enumerate");
    std::vector<BitString> out;
    out.reserve(std::size_t{1} << dim());
    BitString cur = offset;
    out.push_back(cur);
    // Gray-code walk: step k flips basis vector ctz(k).
    for (std::size_t k = 1; k < (std::size_t{1} << dim()); ++k) {
        cur ^= basis[std::countr_zero(k)];
        out.push_back(cur);
    }
    return out;
}

BitString sample_subspace(const AffineSubspace& S, Rng& rng) {
    BitString x = S.offset;
    uint64_t bits = 0;
    for (std::size_t i = 0; i < S.basis.size(); ++i) {
        if ((i & 63) == 0) bits = rng.next();
        if ((bits >> (i & 63)) & 1) x ^= S.basis[i];
    }
    return x;
}

LinearSystem::LinearSystem(const GF2Matrix& A)
    : rows_(A.rows()), cols_(A.cols()), pivot_mask_(A.cols()) {
    GF2Matrix M = A;
    GF2Matrix E = GF2Matrix::identity(rows_);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t p = r;
        while (p < rows_ && !M.get(p, c)) ++p;
        if (p == rows_) continue;
        if (p != r) {
            M.xor_row(r, p);
            E.xor_row(r, p);
        }
        for (std::size_t i = 0; i < rows_; ++i)
            if (i != r && M.get(i, c)) {
                M.xor_row(i, r);
                E.xor_row(i, r);
            }
        pivots_.push_back(c);
        pivot_mask_.set(c, true);
        ++r;
    }
    reduced_ = GF2Matrix(0, cols_);
    for (std::size_t i = 0; i < r; ++i) reduced_.add_row(M.row_bits(i));
    ops_ = std::move(E);
}

BitString LinearSystem::reduce_rhs(const BitString& b) const {
    if (b.size() != rows_) throw std::length_error("rhs length mismatch");
    return ops_.apply(b);
}

bool LinearSystem::consistent(const BitString& b) const {
    BitString rb = reduce_rhs(b);
    for (std::size_t i = rank(); i < rows_; ++i)
        if (rb.get(i)) return false;
    return true;
}

std::optional<BitString> LinearSystem::back_substitute(const BitString& rb,
                                                       const BitString& free_assignment) const {
    for (std::size_t i = rank(); i < rows_; ++i)
        if (rb.get(i)) return std::nullopt;
    BitString x = free_assignment;
    const uint64_t* xv = x.words();
    std::size_t nw = x.word_count();
    for (std::size_t i = 0; i < rank(); ++i) {
        const uint64_t* rv = reduced_.row(i);
        uint64_t acc = 0;
        for (std::size_t k = 0; k < nw; ++k) acc ^= rv[k] & xv[k];
        bool v = rb.get(i) ^ (std::popcount(acc) & 1);
        x.set(pivots_[i], v);
    }
    return x;
}

std::optional<BitString> LinearSystem::sample(const BitString& b, Rng& rng) const {
    BitString free = rng.bits(cols_);
    // Pivot coordinates are overwritten; clear them first so the row dot products see only free bits.
    for (std::size_t k = 0; k < free.word_count(); ++k) free.words()[k] &= ~pivot_mask_.word(k);
    return back_substitute(reduce_rhs(b), free);
}

std::optional<BitString> LinearSystem::particular(const BitString& b) const {
    return back_substitute(reduce_rhs(b), BitString(cols_));
}

std::variant<AffineSubspace, NoSolution> LinearSystem::solve(const BitString& b) const {
    auto off = particular(b);
    if (!off) return NoSolution{};
    AffineSubspace S;
    S.ambient_len = cols_;
    S.offset = *off;
    for (std::size_t c = 0; c < cols_; ++c) {
        if (pivot_mask_.get(c)) continue;
        BitString v(cols_);
        v.set(c, true);
        for (std::size_t i = 0; i < rank(); ++i)
            if (reduced_.get(i, c)) v.set(pivots_[i], true);
        S.basis.push_back(std::move(v));
    }
    return S;
}

std::variant<AffineSubspace, NoSolution> solve_affine(const GF2Matrix& A, const BitString& b) {
    if (A.rows() != b.size()) throw std::length_error("solve_affine: rows != rhs length");
    return LinearSystem(A).solve(b);
}

}  // namespace nmc
