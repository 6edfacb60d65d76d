#pragma once

#include "nmc/bits.hpp"
#include "nmc/gf2.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace nmc {

// poly carries the x^b term; b <= 63.
struct FieldSpec {
    unsigned b = 0;
    uint64_t poly = 0;
    bool operator==(const FieldSpec&) const = default;
};

bool is_irreducible(uint64_t poly, unsigned degree);
uint64_t smallest_irreducible(unsigned degree);
// Table entry for b in {3,4,8,16}, otherwise the smallest irreducible polynomial.
FieldSpec standard_field_spec(unsigned b);

class Field {
public:
    explicit Field(FieldSpec spec);

    const FieldSpec& spec() const { return spec_; }
    unsigned degree() const { return spec_.b; }
    uint64_t order_minus_one() const { return (uint64_t{1} << spec_.b) - 1; }

    uint64_t mul(uint64_t a, uint64_t c) const {
        if (!log_.empty()) {
            if (!a || !c) return 0;
            return exp_[log_[a] + log_[c]];
        }
        return mul_wide(a, c);
    }
    uint64_t mul_slow(uint64_t a, uint64_t c) const;
    // Carry-less product reduced eight bits at a time; any degree.
    uint64_t mul_wide(uint64_t a, uint64_t c) const;
    bool has_tables() const { return !log_.empty(); }
    // Table fields only: a * c where log_c is the discrete log of a nonzero c.
    uint32_t log_of(uint64_t c) const { return log_[c]; }
    uint64_t mul_by_log(uint64_t a, uint32_t log_c) const { return a ? exp_[log_[a] + log_c] : 0; }
    uint64_t pow(uint64_t a, uint64_t e) const;
    uint64_t inv(uint64_t a) const;
    // Smallest primitive element; requires degree <= 32.
    uint64_t generator() const { return generator_; }

private:
    FieldSpec spec_;
    std::vector<uint16_t> log_;  // table fields have degree <= 16
    std::vector<uint16_t> exp_;
    std::vector<uint64_t> red_;  // red_[t] = t * x^b mod poly
    uint64_t generator_ = 0;
};

// Shared instance of the standard field of degree b.
const Field& standard_field(unsigned b);

// GF(2^128) modulo x^128 + x^7 + x^2 + x + 1, with the same MSB-first coefficient order as Field.
using u128 = unsigned __int128;
u128 gf128_mul(u128 a, u128 c);
u128 get_u128(const BitString& s, std::size_t pos);
void xor_u128(BitString& s, std::size_t pos, u128 v);

struct FieldElem {
    FieldSpec spec;
    uint64_t value = 0;
    bool operator==(const FieldElem&) const = default;
};

FieldElem gf_add(const FieldElem& a, const FieldElem& c);
FieldElem gf_mul(const FieldElem& a, const FieldElem& c);

class RSCode {
public:
    RSCode(const Field& field, std::size_t k, std::size_t n);

    const Field& field() const { return *field_; }
    std::size_t k() const { return k_; }
    std::size_t n() const { return n_; }
    unsigned b() const { return field_->degree(); }
    uint64_t eval_point(std::size_t i) const { return points_[i - 1]; }  // 1-based
    const std::vector<uint64_t>& eval_points() const { return points_; }

    std::vector<uint64_t> encode(const std::vector<uint64_t>& msg) const;
    // Codeword symbol at 1-based position i of the message held in `bits` (k*b bits from `pos`).
    uint64_t symbol_at(const BitString& bits, std::size_t pos, std::size_t i) const;

private:
    const Field* field_;
    std::size_t k_, n_;
    std::vector<uint64_t> points_;
};

std::vector<FieldElem> rs_encode(const std::vector<FieldElem>& msg, const RSCode& code);

// GF(2) expansion of the map (x_{j+1..k}) -> (codeword_t)_{t in T}: rows |T|*b, cols (k-j)*b.
// Row t*b+i is output bit i (MSB first) of sample t; column (s-j-1)*b+e is bit e of symbol s.
GF2Matrix rs_constraints(const RSCode& code, const std::vector<std::size_t>& T, std::size_t free_from);

std::vector<uint64_t> symbols_of(const BitString& bits, unsigned b);
BitString bits_of(const std::vector<uint64_t>& symbols, unsigned b);

}  // namespace nmc
