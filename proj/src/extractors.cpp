#include "nmc/extractors.hpp"

#include <bit>
#include <stdexcept>

namespace nmc {

uint64_t ip_symbols(const Field& F, const BitString& x, std::size_t xpos, const BitString& y, std::size_t ypos,
                    std::size_t r) {
    unsigned m = F.degree();
    uint64_t acc = 0;
    for (std::size_t i = 0; i < r; ++i) acc ^= F.mul(x.get_bits(xpos + i * m, m), y.get_bits(ypos + i * m, m));
    return acc;
}

namespace {

void check_ip(const IPSpec& spec) {
    if (spec.m == 0 || spec.m > 63) throw std::invalid_argument("IP output width must be in 1..63");
    if (spec.n % spec.m) throw std::invalid_argument("IP output width must divide the input width");
}

}  // namespace

BitString ip_extract(const BitString& x, const BitString& y, const IPSpec& spec) {
    check_ip(spec);
    if (x.size() != spec.n || y.size() != spec.n) throw std::length_error("ip_extract: input length mismatch");
    const Field& F = standard_field(spec.m);
    return BitString::from_uint(ip_symbols(F, x, 0, y, 0, spec.r()), spec.m);
}

BitString ip_extract_augmented(const BitString& x, const BitString& y, const IPSpec& spec) {
    check_ip(spec);
    if (x.size() != spec.n + spec.m || y.size() != spec.n)
        throw std::length_error("ip_extract_augmented: input length mismatch");
    const Field& F = standard_field(spec.m);
    uint64_t v = ip_symbols(F, x, 0, y, 0, spec.r()) ^ x.get_bits(spec.n, spec.m);
    return BitString::from_uint(v, spec.m);
}

BitString ip_extract_two_sided(const BitString& x, const BitString& y, const IPSpec& spec) {
    check_ip(spec);
    if (x.size() != spec.n || y.size() != spec.n) throw std::length_error("ip_extract_two_sided: input length mismatch");
    if (spec.r() == 0) throw std::invalid_argument("ip_extract_two_sided needs at least one symbol");
    const Field& F = standard_field(spec.m);
    std::size_t last = (spec.r() - 1) * spec.m;
    uint64_t v = ip_symbols(F, x, 0, y, 0, spec.r() - 1) ^ x.get_bits(last, spec.m) ^ y.get_bits(last, spec.m);
    return BitString::from_uint(v, spec.m);
}

namespace {

BitString reversed(const BitString& s) {
    BitString out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s.get(i)) out.set(s.size() - 1 - i, true);
    return out;
}

// T(s)x where `rs` is the seed reversed: row i of T(s) is rs read from offset m-1-i.
BitString toeplitz_reversed(const BitString& x, const BitString& rs, std::size_t m) {
    BitString out(m);
    std::size_t nw = x.word_count();
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t off = m - 1 - i;
        uint64_t acc = 0;
        for (std::size_t k = 0; k < nw; ++k) acc ^= rs.window(off + 64 * k) & x.word(k);
        if (std::popcount(acc) & 1) out.set(i, true);
    }
    return out;
}

}  // namespace

BitString lse_extract(const BitString& x, const BitString& s, const LSESpec& spec) {
    if (spec.m == 0 || spec.n == 0) throw std::invalid_argument("lse widths must be positive");
    if (x.size() != spec.n) throw std::length_error("lse_extract: source length mismatch");
    if (s.size() != spec.d()) throw std::length_error("lse_extract: seed length must be n+m-1");
    return toeplitz_reversed(x, reversed(s), spec.m);
}

GF2Matrix lse_matrix(const BitString& s, const LSESpec& spec) {
    if (s.size() != spec.d()) throw std::length_error("lse_matrix: seed length must be n+m-1");
    GF2Matrix T(spec.m, spec.n);
    for (std::size_t i = 0; i < spec.m; ++i)
        for (std::size_t j = 0; j < spec.n; ++j)
            if (s.get(i + spec.n - 1 - j)) T.set(i, j, true);
    return T;
}

unsigned SamplerSpec::log_n() const { return n ? static_cast<unsigned>(std::bit_width(n) - 1) : 0; }
unsigned SamplerSpec::seed_bits() const {
    return t_samp <= 1 ? 0 : static_cast<unsigned>(std::bit_width(t_samp - 1));
}
unsigned SamplerSpec::output_bits() const { return log_n() >= seed_bits() ? log_n() - seed_bits() : 0; }
std::size_t SamplerSpec::key_bits() const {
    unsigned me = output_bits();
    return me == 0 ? 0 : me + seed_bits() - 1;
}

std::string sampler_problem(const SamplerSpec& spec) {
    if (spec.t_samp == 0) return "sampler needs at least one sample";
    if (spec.t_samp > spec.n) return "sampler sample count exceeds universe size";
    if (spec.r == 0) return {};
    if (!std::has_single_bit(spec.n)) return "sampler universe must be a power of two when randomness is used";
    if (spec.seed_bits() > spec.log_n()) return "sampler seed enumeration does not fit the universe";
    if (spec.output_bits() == 0) return "sampler has no room for an extractor output";
    if (spec.r > spec.key_bits()) return "sampler randomness exceeds the Toeplitz key length";
    return {};
}

std::vector<std::size_t> samp(const BitString& v, const SamplerSpec& spec) {
    if (auto p = sampler_problem(spec); !p.empty()) throw std::invalid_argument(p);
    if (v.size() != spec.r) throw std::length_error("samp: randomness length mismatch");
    std::vector<std::size_t> out(spec.t_samp);
    if (spec.r == 0) {
        for (std::size_t j = 0; j < spec.t_samp; ++j) out[j] = j + 1;
        return out;
    }
    unsigned de = spec.seed_bits(), me = spec.output_bits();
    BitString key(spec.key_bits());
    key.put(0, v);
    for (std::size_t j = 0; j < spec.t_samp; ++j) {
        uint64_t ext = 0;
        for (unsigned a = 0; a < me; ++a) {
            bool bit = false;
            for (unsigned c = 0; c < de; ++c) {
                bool sc = (j >> (de - 1 - c)) & 1;
                if (sc && key.get(a + de - 1 - c)) bit = !bit;
            }
            ext = (ext << 1) | bit;
        }
        out[j] = ((ext << de) | j) + 1;
    }
    return out;
}

std::size_t IExtSpec::r() const {
    std::size_t mm = m();
    return mm ? (d2() + mm - 1) / mm : 0;
}

std::string iext_problem(const IExtSpec& spec) {
    if (spec.d < 2 || spec.d % 2) return "iExt seed length must be even and positive";
    if (spec.d > 64) return "iExt seed length must be at most 64";
    if (spec.d1 >= spec.m()) return "iExt sampler slice must be shorter than the output width";
    if (spec.t() > spec.n) return "iExt sample count exceeds source length";
    return sampler_problem(spec.sampler());
}

IExt::IExt(const IExtSpec& spec) : spec_(spec) {
    if (auto p = iext_problem(spec); !p.empty()) throw std::invalid_argument(p);
    field_ = &standard_field(static_cast<unsigned>(spec.m()));
    contiguous_ = spec.d1 == 0;
    if (spec.d1 <= 16) {
        cache_.resize(std::size_t{1} << spec.d1);
        for (std::size_t v = 0; v < cache_.size(); ++v)
            cache_[v] = samp(BitString::from_uint(v, static_cast<unsigned>(spec.d1)), spec.sampler());
    }
}

const std::vector<std::size_t>& IExt::samples(uint64_t slice) const {
    if (!cache_.empty()) return cache_[slice];
    thread_local std::vector<std::size_t> scratch;
    scratch = samp(BitString::from_uint(slice, static_cast<unsigned>(spec_.d1)), spec_.sampler());
    return scratch;
}

uint64_t IExt::eval(const BitString& x, std::size_t pos, uint64_t seed) const {
    const std::size_t m = spec_.m(), r = spec_.r(), d2 = spec_.d2();
    const uint64_t mmask = m == 64 ? ~uint64_t{0} : (uint64_t{1} << m) - 1;
    unsigned __int128 padded = static_cast<unsigned __int128>(d2 == 64 ? seed : seed & ((uint64_t{1} << d2) - 1))
                               << (r * m - d2);
    uint64_t acc = 0;
    if (contiguous_) {
        for (std::size_t i = 0; i < r; ++i) {
            uint64_t si = static_cast<uint64_t>(padded >> ((r - 1 - i) * m)) & mmask;
            if (si) acc ^= field_->mul(x.get_bits(pos + i * m, static_cast<unsigned>(m)), si);
        }
        return acc ^ x.get_bits(pos + r * m, static_cast<unsigned>(m));
    }
    const auto& T = samples(seed >> d2);
    auto sym = [&](std::size_t i) {
        uint64_t v = 0;
        for (std::size_t k = 0; k < m; ++k) v = (v << 1) | x.get(pos + T[i * m + k] - 1);
        return v;
    };
    for (std::size_t i = 0; i < r; ++i) {
        uint64_t si = static_cast<uint64_t>(padded >> ((r - 1 - i) * m)) & mmask;
        if (si) acc ^= field_->mul(sym(i), si);
    }
    return acc ^ sym(r);
}

BitString IExt::apply(const BitString& x, const BitString& s) const {
    if (x.size() != spec_.n) throw std::length_error("iext: source length mismatch");
    if (s.size() != spec_.d) throw std::length_error("iext: seed length mismatch");
    return BitString::from_uint(eval(x, 0, s.get_bits(0, static_cast<unsigned>(spec_.d))),
                                static_cast<unsigned>(spec_.m()));
}

void IExt::sample_fiber(BitString& x, std::size_t pos, uint64_t seed, uint64_t target, Rng& rng) const {
    rng.fill_range(x, pos, spec_.n);
    correct(x, pos, seed, eval(x, pos, seed) ^ target);
}

void IExt::correct(BitString& x, std::size_t pos, uint64_t seed, uint64_t delta) const {
    const std::size_t m = spec_.m(), r = spec_.r();
    if (contiguous_) {
        x.xor_bits(pos + r * m, static_cast<unsigned>(m), delta);
        return;
    }
    const auto& T = samples(seed >> spec_.d2());
    for (std::size_t k = 0; k < m; ++k)
        if ((delta >> (m - 1 - k)) & 1) x.flip(pos + T[r * m + k] - 1);
}

GF2Matrix IExt::matrix(const BitString& s) const {
    if (s.size() != spec_.d) throw std::length_error("iext: seed length mismatch");
    uint64_t seed = s.get_bits(0, static_cast<unsigned>(spec_.d));
    const std::size_t m = spec_.m();
    GF2Matrix M(m, spec_.n);
    BitString e(spec_.n);
    for (std::size_t j = 0; j < spec_.n; ++j) {
        e.set(j, true);
        uint64_t col = eval(e, 0, seed);
        e.set(j, false);
        for (std::size_t i = 0; i < m; ++i)
            if ((col >> (m - 1 - i)) & 1) M.set(i, j, true);
    }
    return M;
}

AffineSubspace IExt::fiber(const BitString& s, const BitString& r_out) const {
    auto res = solve_affine(matrix(s), r_out);
    if (auto* S = std::get_if<AffineSubspace>(&res)) return std::move(*S);
    throw std::logic_error("iext fiber unexpectedly empty");
}

BitString iext(const BitString& x, const BitString& s, const IExtSpec& spec) { return IExt(spec).apply(x, s); }

AffineSubspace iext_fiber(const BitString& s, const BitString& r_out, const IExtSpec& spec) {
    return IExt(spec).fiber(s, r_out);
}

BitString expand_seed(const BitString& seed, std::size_t len) {
    uint64_t acc = 0x243f6a8885a308d3ULL ^ seed.size();
    for (std::size_t k = 0; k < seed.word_count(); ++k) {
        uint64_t st = acc ^ seed.word(k);
        acc = splitmix64(st);
    }
    Rng prg(acc);
    return prg.bits(len);
}

BitString role_extract(const BitString& x, const BitString& seed, const ToeplitzRole& role) {
    if (x.size() != role.n) throw std::length_error("role_extract: source length mismatch");
    // The PRG stream is taken as the reversed Toeplitz diagonal.
    return toeplitz_reversed(x, expand_seed(seed, role.n + role.m - 1), role.m);
}

}  // namespace nmc
