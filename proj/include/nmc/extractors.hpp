#pragma once

#include "nmc/bits.hpp"
#include "nmc/field.hpp"
#include "nmc/gf2.hpp"
#include "nmc/rng.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace nmc {

struct IPSpec {
    std::size_t n = 0;
    unsigned m = 1;
    std::size_t r() const { return n / m; }
    double error_bound(double k1, double k2) const { return std::exp2(-(k1 + k2 - double(n) - m) / 2); }
};

// Plain inner product of the r-symbol vectors x, y over GF(2^m); symbols are read MSB first.
BitString ip_extract(const BitString& x, const BitString& y, const IPSpec& spec);
// x holds r+1 symbols, y holds r: sum_{i<=r} x_i y_i + x_{r+1}.
BitString ip_extract_augmented(const BitString& x, const BitString& y, const IPSpec& spec);
// Both hold r symbols: sum_{i<r} x_i y_i + x_r + y_r.
BitString ip_extract_two_sided(const BitString& x, const BitString& y, const IPSpec& spec);

// Raw symbol-level kernels on sub-ranges of larger strings.
uint64_t ip_symbols(const Field& F, const BitString& x, std::size_t xpos, const BitString& y, std::size_t ypos,
                    std::size_t r);

struct LSESpec {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t k = 0;
    std::size_t d() const { return n + m - 1; }
};

BitString lse_extract(const BitString& x, const BitString& s, const LSESpec& spec);
GF2Matrix lse_matrix(const BitString& s, const LSESpec& spec);

struct SamplerSpec {
    std::size_t r = 0;       // randomness bits
    std::size_t n = 0;       // universe size
    std::size_t t_samp = 0;  // number of samples
    unsigned log_n() const;
    unsigned seed_bits() const;    // d_e = ceil(log2 t_samp)
    unsigned output_bits() const;  // m_e = log2 n - d_e
    std::size_t key_bits() const;  // m_e + d_e - 1
};

// Empty string when the spec is consistent.
std::string sampler_problem(const SamplerSpec& spec);
std::vector<std::size_t> samp(const BitString& v, const SamplerSpec& spec);

struct IExtSpec {
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t d1 = 0;

    std::size_t m() const { return d / 2; }
    std::size_t d2() const { return d - d1; }
    std::size_t r() const;  // seed symbols after zero-padding
    std::size_t t() const { return (r() + 1) * m(); }
    SamplerSpec sampler() const { return {d1, n, t()}; }
};

std::string iext_problem(const IExtSpec& spec);

// Evaluator with the per-slice sample sets cached; shared read-only after construction.
class IExt {
public:
    explicit IExt(const IExtSpec& spec);

    const IExtSpec& spec() const { return spec_; }
    std::size_t out_bits() const { return spec_.m(); }

    BitString apply(const BitString& x, const BitString& s) const;
    // Evaluate on the n-bit block of `x` starting at `pos` with the seed given as an integer.
    uint64_t eval(const BitString& x, std::size_t pos, uint64_t seed) const;

    // Rewrite the block at `pos` into a uniform member of the fiber of `target`.
    void sample_fiber(BitString& x, std::size_t pos, uint64_t seed, uint64_t target, Rng& rng) const;
    // Add `delta` to the output by editing only the last sampled symbol.
    void correct(BitString& x, std::size_t pos, uint64_t seed, uint64_t delta) const;
    bool contiguous() const { return contiguous_; }

    GF2Matrix matrix(const BitString& s) const;
    AffineSubspace fiber(const BitString& s, const BitString& r_out) const;

    const std::vector<std::size_t>& samples(uint64_t slice) const;

private:
    IExtSpec spec_;
    const Field* field_;
    std::vector<std::vector<std::size_t>> cache_;
    bool contiguous_ = false;  // sampler is the identity prefix 1..t
};

BitString iext(const BitString& x, const BitString& s, const IExtSpec& spec);
AffineSubspace iext_fiber(const BitString& s, const BitString& r_out, const IExtSpec& spec);

// Toeplitz hashing whose full diagonal is expanded from a short seed by a fixed PRG.
struct ToeplitzRole {
    std::size_t n = 0;  // source bits
    std::size_t m = 0;  // output bits
};
BitString expand_seed(const BitString& seed, std::size_t len);
BitString role_extract(const BitString& x, const BitString& seed, const ToeplitzRole& role);

}  // namespace nmc
