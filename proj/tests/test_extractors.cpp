#include "nmc/extractors.hpp"

#include <doctest.h>

#include <map>
#include <set>

using namespace nmc;

namespace {

uint64_t slow_mul(uint64_t a, uint64_t c, const FieldSpec& f) {
    uint64_t r = 0;
    for (unsigned i = 0; i < f.b; ++i) {
        if ((c >> i) & 1) r ^= a;
        a <<= 1;
        if ((a >> f.b) & 1) a ^= f.poly;
    }
    return r;
}

uint64_t direct_ip(const BitString& x, const BitString& y, unsigned m, std::size_t r) {
    FieldSpec f = standard_field_spec(m);
    uint64_t acc = 0;
    for (std::size_t i = 0; i < r; ++i) {
        uint64_t xi = 0, yi = 0;
        for (unsigned k = 0; k < m; ++k) {
            xi = (xi << 1) | x.get(i * m + k);
            yi = (yi << 1) | y.get(i * m + k);
        }
        acc ^= slow_mul(xi, yi, f);
    }
    return acc;
}

}  // namespace

TEST_CASE("ip_extract examples") {
    CHECK(ip_extract(BitString::from_bits("10"), BitString::from_bits("11"), {2, 1}).to_bits() == "1");
    Rng rng(1);
    auto x = rng.bits(16);
    CHECK(ip_extract(x, BitString(16), {16, 4}).is_zero());
    CHECK_THROWS(ip_extract(x, BitString(15), {16, 4}));
}

TEST_CASE("augmented IP matches the direct formula") {
    Rng rng(2);
    for (int i = 0; i < 1000; ++i) {
        unsigned m = 1 + static_cast<unsigned>(rng.below(4));
        std::size_t r = 1 + rng.below(16 / m);
        auto x = rng.bits((r + 1) * m), y = rng.bits(r * m);
        uint64_t expect = direct_ip(x, y, m, r) ^ x.get_bits(r * m, m);
        CHECK(ip_extract_augmented(x, y, {r * m, m}).get_bits(0, m) == expect);
    }
    auto x = rng.bits(12);
    CHECK(ip_extract_augmented(x, BitString(8), {8, 4}) == x.sub(8, 4));
}

TEST_CASE("two-sided IP matches the direct formula") {
    Rng rng(3);
    for (int i = 0; i < 300; ++i) {
        auto x = rng.bits(32), y = rng.bits(32);
        uint64_t expect = direct_ip(x, y, 8, 3) ^ x.get_bits(24, 8) ^ y.get_bits(24, 8);
        CHECK(ip_extract_two_sided(x, y, {32, 8}).get_bits(0, 8) == expect);
    }
}

TEST_CASE("lse_extract agrees with lse_matrix") {
    Rng rng(4);
    for (std::size_t n = 1; n <= 8; ++n)
        for (std::size_t m = 1; m <= n; ++m) {
            LSESpec spec{n, m, m};
            auto s = rng.bits(spec.d());
            auto T = lse_matrix(s, spec);
            for (int i = 0; i < 20; ++i) {
                auto x = rng.bits(n);
                CHECK(T.apply(x) == lse_extract(x, s, spec));
            }
        }
    LSESpec big{300, 20, 20};
    auto s = rng.bits(big.d());
    auto x = rng.bits(300);
    CHECK(lse_matrix(s, big).apply(x) == lse_extract(x, s, big));
    CHECK(lse_extract(x, BitString(big.d()), big).is_zero());
    CHECK(lse_extract(BitString(300), s, big).is_zero());
}

TEST_CASE("Toeplitz matrix has constant diagonals") {
    LSESpec spec{5, 3, 3};
    Rng rng(9);
    auto T = lse_matrix(rng.bits(spec.d()), spec);
    for (std::size_t i = 1; i < 3; ++i)
        for (std::size_t j = 1; j < 5; ++j) CHECK(T.get(i, j) == T.get(i - 1, j - 1));
}

TEST_CASE("lse linearity exhaustively at n=4, m=2") {
    LSESpec spec{4, 2, 2};
    for (uint64_t s = 0; s < 32; ++s)
        for (uint64_t a = 0; a < 16; ++a)
            for (uint64_t c = 0; c < 16; ++c) {
                auto S = BitString::from_uint(s, 5);
                auto xa = BitString::from_uint(a, 4), xc = BitString::from_uint(c, 4);
                CHECK(lse_extract(xa ^ xc, S, spec) == (lse_extract(xa, S, spec) ^ lse_extract(xc, S, spec)));
            }
}

TEST_CASE("plain Toeplitz fibers vary across seeds") {
    LSESpec spec{4, 2, 2};
    std::set<std::size_t> sizes;
    for (uint64_t s = 0; s < 32; ++s) {
        auto S = BitString::from_uint(s, 5);
        std::size_t zeros = 0;
        for (uint64_t a = 0; a < 16; ++a) zeros += lse_extract(BitString::from_uint(a, 4), S, spec).is_zero();
        sizes.insert(zeros);
    }
    CHECK(sizes.size() > 1);
}

TEST_CASE("sampler degenerate and distinct cases") {
    auto ident = samp(BitString(), {0, 16, 16});
    for (std::size_t j = 0; j < 16; ++j) CHECK(ident[j] == j + 1);
    CHECK(samp(BitString(), {0, 10, 3}) == std::vector<std::size_t>{1, 2, 3});
    SamplerSpec spec{9, 1024, 32};
    Rng rng(5);
    for (int i = 0; i < 10000; ++i) {
        auto T = samp(rng.bits(9), spec);
        std::set<std::size_t> u(T.begin(), T.end());
        CHECK(u.size() == 32);
        CHECK(*u.begin() >= 1);
        CHECK(*u.rbegin() <= 1024);
    }
    CHECK_THROWS(samp(rng.bits(3), {3, 1000, 8}));
    CHECK_THROWS(samp(rng.bits(20), {20, 64, 8}));
}

TEST_CASE("iext fiber sizes are exactly 2^(n-m) at n=12, d=8") {
    IExtSpec spec{12, 8, 0};
    IExt E(spec);
    for (uint64_t s = 0; s < 256; ++s) {
        std::map<uint64_t, int> count;
        for (uint64_t x = 0; x < 4096; ++x) ++count[E.eval(BitString::from_uint(x, 12), 0, s)];
        CHECK(count.size() == 16);
        for (auto& [r, c] : count) CHECK(c == 256);
    }
}

TEST_CASE("iext with a sampler slice") {
    IExtSpec spec{64, 16, 1};
    IExt E(spec);
    CHECK(spec.m() == 8);
    CHECK(spec.t() == 24);
    Rng rng(6);
    for (int i = 0; i < 200; ++i) {
        auto s = rng.bits(16);
        auto x = rng.bits(64), y = rng.bits(64);
        CHECK(E.apply(x ^ y, s) == (E.apply(x, s) ^ E.apply(y, s)));
        CHECK(E.matrix(s).apply(x) == E.apply(x, s));
        // Direct definition: sample, project, augmented IP.
        auto T = samp(slice(s, 1), spec.sampler());
        auto x1 = project(x, T);
        auto s2 = s.sub(1, 15);
        s2.resize(16);
        CHECK(E.apply(x, s) == ip_extract_augmented(x1, s2, {16, 8}));
        auto r = rng.bits(8);
        BitString blk(64);
        E.sample_fiber(blk, 0, s.get_bits(0, 16), r.get_bits(0, 8), rng);
        CHECK(E.apply(blk, s) == r);
    }
    auto F = E.fiber(rng.bits(16), rng.bits(8));
    CHECK(F.dim() == 56);
}

TEST_CASE("iext of zero source is zero") {
    IExtSpec spec{12, 8, 0};
    Rng rng(3);
    for (int i = 0; i < 50; ++i) CHECK(iext(BitString(12), rng.bits(8), spec).is_zero());
}

TEST_CASE("iext fiber membership round trip") {
    IExtSpec spec{12, 8, 0};
    Rng rng(10);
    for (int i = 0; i < 1000; ++i) {
        auto s = rng.bits(8), r = rng.bits(4);
        auto F = iext_fiber(s, r, spec);
        CHECK(F.dim() == 8);
        CHECK(iext(sample_subspace(F, rng), s, spec) == r);
    }
}

TEST_CASE("expanded-seed roles are deterministic and linear") {
    ToeplitzRole role{100, 6};
    Rng rng(12);
    auto s = rng.bits(6);
    auto x = rng.bits(100), y = rng.bits(100);
    CHECK(role_extract(x, s, role) == role_extract(x, s, role));
    CHECK(role_extract(x ^ y, s, role) == (role_extract(x, s, role) ^ role_extract(y, s, role)));
    CHECK(expand_seed(s, 105) != expand_seed(s ^ BitString::from_bits("000001"), 105));
}
