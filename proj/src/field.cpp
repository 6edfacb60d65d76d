#include "nmc/field.hpp"

#include <array>
#include <bit>
#include <mutex>
#include <stdexcept>

namespace nmc {

namespace {

using u128 = unsigned __int128;

int poly_degree(u128 a) {
    uint64_t hi = static_cast<uint64_t>(a >> 64);
    if (hi) return 127 - std::countl_zero(hi);
    uint64_t lo = static_cast<uint64_t>(a);
    return lo ? 63 - std::countl_zero(lo) : -1;
}

u128 clmul(uint64_t a, uint64_t c) {
    u128 r = 0;
    while (c) {
        int i = std::countr_zero(c);
        r ^= static_cast<u128>(a) << i;
        c &= c - 1;
    }
    return r;
}

uint64_t poly_mod(u128 a, uint64_t m) {
    int dm = poly_degree(m);
    for (int d = poly_degree(a); d >= dm; d = poly_degree(a)) a ^= static_cast<u128>(m) << (d - dm);
    return static_cast<uint64_t>(a);
}

uint64_t mulmod(uint64_t a, uint64_t c, uint64_t m) { return poly_mod(clmul(a, c), m); }

uint64_t poly_gcd(uint64_t a, uint64_t c) {
    while (c) {
        uint64_t r = poly_mod(a, c);
        a = c;
        c = r;
    }
    return a;
}

// x^(2^k) mod m
uint64_t frobenius_power(unsigned k, uint64_t m) {
    uint64_t r = 2;
    for (unsigned i = 0; i < k; ++i) r = mulmod(r, r, m);
    return r;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

bool is_irreducible(uint64_t poly, unsigned degree) {
    if (degree == 0 || degree > 63) return false;
    if (poly_degree(poly) != static_cast<int>(degree)) return false;
    if (degree == 1) return true;
    if (!(poly & 1)) return false;
    if (degree <= 32) {
        for (unsigned d = 1; d <= degree / 2; ++d)
            for (uint64_t f = uint64_t{1} << d; f < (uint64_t{1} << (d + 1)); ++f)
                if (poly_mod(poly, f) == 0) return false;
        return true;
    }
    // Rabin: x^(2^b) = x mod p and gcd(x^(2^(b/q)) - x, p) = 1 for each prime q | b.
    if (frobenius_power(degree, poly) != 2) return false;
    for (uint64_t q : prime_factors(degree)) {
        uint64_t h = frobenius_power(static_cast<unsigned>(degree / q), poly) ^ 2;
        if (poly_degree(poly_gcd(poly, h)) != 0) return false;
    }
    return true;
}

uint64_t smallest_irreducible(unsigned degree) {
    if (degree == 0 || degree > 63) throw std::invalid_argument("field degree must be in 1..63");
    uint64_t top = uint64_t{1} << degree;
    for (uint64_t low = 0; low < top; ++low)
        if (is_irreducible(top | low, degree)) return top | low;
    throw std::logic_error("no irreducible polynomial found");
}

FieldSpec standard_field_spec(unsigned b) {
    switch (b) {
        case 3: return {3, 0xB};
        case 4: return {4, 0x13};
        case 8: return {8, 0x11B};
        case 16: return {16, 0x1002B};
        default: return {b, smallest_irreducible(b)};
    }
}

Field::Field(FieldSpec spec) : spec_(spec) {
    red_.resize(256);
    for (uint64_t t = 0; t < 256; ++t) red_[t] = poly_mod(static_cast<u128>(t) << spec.b, spec.poly);
    if (!is_irreducible(spec.poly, spec.b)) throw std::invalid_argument("field polynomial is not irreducible");
    if (spec_.b <= 32) {
        uint64_t order = order_minus_one();
        auto factors = prime_factors(order);
        for (uint64_t g = 1; g <= order; ++g) {
            bool primitive = true;
            for (uint64_t q : factors)
                if (pow(g, order / q) == 1) { primitive = false; break; }
            if (primitive) { generator_ = g; break; }
        }
        if (order == 1) generator_ = 1;
    }
    if (spec_.b <= 16) {
        uint64_t order = order_minus_one();
        log_.assign(order + 1, 0);
        exp_.assign(2 * order + 1, 0);
        uint64_t v = 1;
        for (uint64_t i = 0; i < order; ++i) {
            exp_[i] = static_cast<uint16_t>(v);
            log_[v] = static_cast<uint16_t>(i);
            v = mul_slow(v, generator_);
        }
        for (uint64_t i = order; i < exp_.size(); ++i) exp_[i] = exp_[i - order];
    }
}

uint64_t Field::mul_slow(uint64_t a, uint64_t c) const { return mulmod(a, c, spec_.poly); }

uint64_t Field::mul_wide(uint64_t a, uint64_t c) const {
    const unsigned b = spec_.b;
    u128 p = clmul(a, c);
    for (int k = static_cast<int>((b + 6) / 8) - 1; k >= 0; --k) {
        const unsigned at = b + 8 * static_cast<unsigned>(k);
        const unsigned chunk = static_cast<unsigned>(p >> at) & 0xff;
        p ^= static_cast<u128>(chunk) << at;
        p ^= static_cast<u128>(red_[chunk]) << (8 * k);
    }
    return static_cast<uint64_t>(p);
}

uint64_t Field::pow(uint64_t a, uint64_t e) const {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

uint64_t Field::inv(uint64_t a) const {
    if (!a) throw std::domain_error("inverse of zero");
    return pow(a, order_minus_one() - 1);
}

const Field& standard_field(unsigned b) {
    static std::array<std::unique_ptr<Field>, 64> cache;
    static std::mutex mu;
    if (b == 0 || b > 63) throw std::invalid_argument("field degree must be in 1..63");
    std::lock_guard<std::mutex> lock(mu);
    if (!cache[b]) cache[b] = std::make_unique<Field>(standard_field_spec(b));
    return *cache[b];
}

FieldElem gf_add(const FieldElem& a, const FieldElem& c) {
    if (!(a.spec == c.spec)) throw std::invalid_argument("field spec mismatch");
    return {a.spec, a.value ^ c.value};
}

FieldElem gf_mul(const FieldElem& a, const FieldElem& c) {
    if (!(a.spec == c.spec)) throw std::invalid_argument("field spec mismatch");
    return {a.spec, mulmod(a.value, c.value, a.spec.poly)};
}

RSCode::RSCode(const Field& field, std::size_t k, std::size_t n) : field_(&field), k_(k), n_(n) {
    if (field.degree() > 32) throw std::invalid_argument("RS field degree must be <= 32");
    if (n > field.order_minus_one()) throw std::invalid_argument("RS length exceeds number of nonzero field elements");
    if (k > n) throw std::invalid_argument("RS message length exceeds code length");
    points_.resize(n);
    uint64_t v = 1;
    for (std::size_t i = 0; i < n; ++i) {
        points_[i] = v;
        v = field.mul(v, field.generator());
    }
}

std::vector<uint64_t> RSCode::encode(const std::vector<uint64_t>& msg) const {
    if (msg.size() != k_) throw std::length_error("RS message length mismatch");
    std::vector<uint64_t> out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        uint64_t acc = 0;
        for (std::size_t j = k_; j-- > 0;) acc = field_->mul(acc, points_[i]) ^ msg[j];
        out[i] = acc;
    }
    return out;
}

uint64_t RSCode::symbol_at(const BitString& bits, std::size_t pos, std::size_t i) const {
    unsigned b = field_->degree();
    uint64_t a = eval_point(i);
    if (pos + k_ * b > bits.size()) throw std::out_of_range("symbol_at: message extends past the input");
    uint64_t acc = 0;
    if (field_->has_tables()) {
        // Eight interleaved Horner chains in a^8 keep the table lookups independent.
        constexpr std::size_t C = 8;
        uint64_t chain[C] = {};
        const uint32_t l8 = field_->log_of(field_->pow(a, C));
        const std::size_t groups = (k_ + C - 1) / C;
        for (std::size_t g = groups; g-- > 0;) {
            for (std::size_t r = 0; r < C; ++r) {
                const std::size_t j = g * C + r;
                const uint64_t sym = j < k_ ? bits.window(pos + j * b) >> (64 - b) : 0;
                chain[r] = field_->mul_by_log(chain[r], l8) ^ sym;
            }
        }
        uint64_t ar = 1;
        for (std::size_t r = 0; r < C; ++r) {
            acc ^= field_->mul(chain[r], ar);
            ar = field_->mul(ar, a);
        }
        return acc;
    }
    for (std::size_t j = k_; j-- > 0;) acc = field_->mul(acc, a) ^ bits.get_bits(pos + j * b, b);
    return acc;
}

std::vector<FieldElem> rs_encode(const std::vector<FieldElem>& msg, const RSCode& code) {
    std::vector<uint64_t> raw(msg.size());
    for (std::size_t i = 0; i < msg.size(); ++i) {
        if (!(msg[i].spec == code.field().spec())) throw std::invalid_argument("field spec mismatch");
        raw[i] = msg[i].value;
    }
    auto cw = code.encode(raw);
    std::vector<FieldElem> out(cw.size());
    for (std::size_t i = 0; i < cw.size(); ++i) out[i] = {code.field().spec(), cw[i]};
    return out;
}

GF2Matrix rs_constraints(const RSCode& code, const std::vector<std::size_t>& T, std::size_t free_from) {
    if (free_from > code.k() || code.k() - free_from < T.size())
        throw std::invalid_argument("rs_constraints: fewer free symbols than sampled positions");
    const Field& F = code.field();
    unsigned b = F.degree();
    std::size_t nfree = code.k() - free_from;
    GF2Matrix A(T.size() * b, nfree * b);
    for (std::size_t ti = 0; ti < T.size(); ++ti) {
        if (T[ti] < 1 || T[ti] > code.n()) throw std::out_of_range("sample position out of range");
        uint64_t alpha = code.eval_point(T[ti]);
        uint64_t coeff = F.pow(alpha, free_from);  // alpha^(s-1) for s = free_from+1
        for (std::size_t s = 0; s < nfree; ++s) {
            for (unsigned e = 0; e < b; ++e) {
                // Column for bit e (MSB first) of the symbol: the basis element X^(b-1-e).
                uint64_t img = F.mul(coeff, uint64_t{1} << (b - 1 - e));
                for (unsigned i = 0; i < b; ++i)
                    if ((img >> (b - 1 - i)) & 1) A.set(ti * b + i, s * b + e, true);
            }
            coeff = F.mul(coeff, alpha);
        }
    }
    return A;
}

std::vector<uint64_t> symbols_of(const BitString& bits, unsigned b) {
    if (bits.size() % b) throw std::length_error("bit length not a multiple of the symbol width");
    std::vector<uint64_t> out(bits.size() / b);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = bits.get_bits(i * b, b);
    return out;
}

BitString bits_of(const std::vector<uint64_t>& symbols, unsigned b) {
    BitString out(symbols.size() * b);
    for (std::size_t i = 0; i < symbols.size(); ++i) out.set_bits(i * b, b, symbols[i]);
    return out;
}

u128 gf128_mul(u128 a, u128 c) {
    u128 r = 0;
    for (int i = 127; i >= 0; --i) {
        bool carry = static_cast<bool>(r >> 127);
        r <<= 1;
        if (carry) r ^= 0x87;
        if ((c >> i) & 1) r ^= a;
    }
    return r;
}

u128 get_u128(const BitString& s, std::size_t pos) {
    return (static_cast<u128>(s.get_bits(pos, 64)) << 64) | s.get_bits(pos + 64, 64);
}

void xor_u128(BitString& s, std::size_t pos, u128 v) {
    s.xor_bits(pos, 64, static_cast<uint64_t>(v >> 64));
    s.xor_bits(pos + 64, 64, static_cast<uint64_t>(v));
}

}  // namespace nmc
