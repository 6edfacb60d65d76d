#include "doctest.h"

#include "nmc/nmcode.hpp"

#include <cstdio>
#include <fstream>

using namespace nmc;

namespace {

std::string pfile(const char* name) { return std::string(NMC_PARAMS_DIR) + "/" + name; }

struct Micro {
    InvertibleParams p = load_invertible(pfile("micro.json"));
    InvertibleExtractor ext{p};
    PreimageSampler sampler{ext};
};

Micro& micro() {
    static Micro m;
    return m;
}

}  // namespace

TEST_CASE("decoding an encoding returns the message") {
    auto& m = micro();
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        BitString s = rng.bits(m.p.out_bits());
        Codeword c = enc(s, m.sampler, rng);
        CHECK(c.left.size() == m.p.n);
        CHECK(c.right.size() == m.p.n);
        CHECK(dec(c, m.ext) == s);
    }
}

TEST_CASE("two encodings of one message differ") {
    auto& m = micro();
    Rng rng(4);
    BitString s = rng.bits(m.p.out_bits());
    CHECK_FALSE(enc(s, m.sampler, rng) == enc(s, m.sampler, rng));
    CHECK_THROWS(enc(BitString(3), m.sampler, rng));
}

TEST_CASE("copy and replace") {
    BitString u = BitString::from_bits("11"), v = BitString::from_bits("01");
    CHECK(copy_val(SimValue::same_star(), u) == u);
    CHECK(copy_val(SimValue::of(v), u) == v);
    auto r = replace_vals({SimValue::same_star(), SimValue::of(v)}, u);
    CHECK(r == std::vector<BitString>{u, v});
    CHECK_THROWS_AS(copy_t({SimValue::same_star()}, {}), std::invalid_argument);

    // copy with a constant vector agrees with replace.
    std::vector<SimValue> ds = {SimValue::of(v), SimValue::same_star(), SimValue::same_star()};
    CHECK(copy_t(ds, {u, u, u}) == replace_vals(ds, u));
}

TEST_CASE("tamper application and fixed points") {
    BitString x = BitString::from_bits("10110");
    CHECK(Tamper::identity(5).apply(x) == x);
    CHECK(Tamper::flip(BitString::from_bits("00011")).apply(x) == BitString::from_bits("10101"));
    CHECK(Tamper::constant(BitString::from_bits("00000")).apply(x).is_zero());
    CHECK(Tamper::permutation(5, {{0, 4}, {4, 0}}).apply(x) == BitString::from_bits("00111"));
    CHECK_THROWS(Tamper::permutation(5, {{0, 4}}));

    // bit 1 <- bit1 ^ bit0
    Tamper a = Tamper::affine(5, {{1, {0}, false}});
    CHECK(a.apply(x) == BitString::from_bits("11110"));

    CHECK(Tamper::flip(BitString(5)).has_fixed_points());
    CHECK_FALSE(Tamper::flip(BitString::from_bits("00100")).has_fixed_points());
    CHECK(a.has_fixed_points());
    CHECK_FALSE(Tamper::affine(5, {{1, {}, true}}).has_fixed_points());
    // x0 ^ x1 = 1 and x0 ^ x1 = 0 together are unsatisfiable.
    CHECK_FALSE(Tamper::affine(5, {{2, {0, 1}, true}, {3, {0, 1}, false}}).has_fixed_points());
    CHECK(Tamper::affine(5, {{2, {0, 1}, true}, {3, {1}, false}}).has_fixed_points());

    Tamper neg = Tamper::table(2, {3, 2, 1, 0});
    CHECK(neg.apply(BitString::from_bits("01")) == BitString::from_bits("10"));
    CHECK_FALSE(neg.has_fixed_points());
    CHECK(Tamper::table(2, {1, 1, 0, 0}).has_fixed_points());
    Tamper wide = Tamper::table(4, {3, 2, 1, 0});
    CHECK(wide.apply(BitString::from_bits("0110")) == BitString::from_bits("1010"));
    CHECK_THROWS(Tamper::table(1, {3, 2, 1, 0}));
    CHECK_THROWS(Tamper::table(4, {0, 1, 2}));
    CHECK_THROWS(Tamper::table(2, {0, 1, 4, 0}));

    TamperPair p{Tamper::identity(5), Tamper::flip(BitString::from_bits("00100"))};
    CHECK_FALSE(p.has_fixed_point());
}

TEST_CASE("affine fixed points match exhaustive search") {
    Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Tamper::AffineRow> rows;
        std::vector<bool> used(8);
        for (int r = 0; r < 3; ++r) {
            std::size_t t = rng.below(8);
            if (used[t]) continue;
            used[t] = true;
            Tamper::AffineRow row{t, {}, rng.bit()};
            for (std::size_t j = 0; j < 8; ++j)
                if (rng.below(4) == 0) row.support.push_back(j);
            rows.push_back(row);
        }
        Tamper a = Tamper::affine(8, rows);
        bool found = false;
        for (uint64_t v = 0; v < 256 && !found; ++v) {
            BitString x = BitString::from_uint(v, 8);
            found = a.apply(x) == x;
        }
        CHECK(a.has_fixed_points() == found);
    }
}

TEST_CASE("tamper tables load from hex lines") {
    std::string path = "nmc_test_table.txt";
    {
        std::ofstream out(path);
        out << "3\n2\n\n1\n0\n";
    }
    CHECK(load_tamper_table(path, 2) == std::vector<uint64_t>{3, 2, 1, 0});
    CHECK(load_tamper_table(path) == std::vector<uint64_t>{3, 2, 1, 0});
    CHECK_THROWS(load_tamper_table(path, 3));
    {
        std::ofstream out(path);
        out << "3\nzz\n1\n0\n";
    }
    CHECK_THROWS(load_tamper_table(path, 2));
    std::remove(path.c_str());
    CHECK_THROWS(load_tamper_table("/nonexistent/table", 2));
}

TEST_CASE("suites are deterministic and well formed") {
    for (const auto& name : suite_names()) {
        Rng a(5), b(5);
        auto s1 = make_suite(name, 300, 2, 3, a);
        auto s2 = make_suite(name, 300, 2, 3, b);
        CHECK(s1.tuples == s2.tuples);
        CHECK(s1.tuples.size() == 3);
        for (const auto& tup : s1.tuples) CHECK(tup.size() == 2);
    }
    Rng rng(6);
    for (const auto& tup : make_suite("bitflip", 300, 2, 10, rng).tuples)
        for (const auto& p : tup) CHECK_FALSE(p.has_fixed_point());
    CHECK_THROWS(make_suite("nope", 300, 2, 1, rng));
}

TEST_CASE("identity and constant tampers give zero masked SD") {
    auto& m = micro();
    const std::size_t n = m.p.n;
    Rng rng(8);
    BitString s1 = rng.bits(m.p.out_bits()), s2 = rng.bits(m.p.out_bits());
    TamperTuple ident = {{Tamper::identity(n), Tamper::identity(n)}, {Tamper::identity(n), Tamper::identity(n)}};
    TamperTuple consts = {{Tamper::constant(rng.bits(n)), Tamper::constant(rng.bits(n))}};
    ExperimentOptions opt;
    opt.trials = 20;
    auto r = nm_test(s1, s2, {ident, consts}, 0.0, m.sampler, opt);
    REQUIRE(r.size() == 2);
    CHECK(r[0].sd == 0.0);
    CHECK(r[0].pass);
    CHECK(r[0].first.counts.at("*,*") == 20);
    CHECK(r[1].sd == 0.0);
    CHECK(r[1].first.counts.size() == 1);
    CHECK_THROWS(nm_test(s1, s1, {ident}, 0.1, m.sampler, opt));
}

TEST_CASE("experiments are identical across worker counts") {
    auto& m = micro();
    Rng rng(9);
    BitString s = rng.bits(m.p.out_bits());
    auto suite = make_suite("mixed", m.p.n, 2, 2, rng);
    ExperimentOptions opt;
    opt.trials = 24;
    opt.chunk = 5;
    opt.coarse_bits = 4;
    opt.seed = 77;
    auto one = tamper_experiment(s, suite.tuples, m.sampler, opt);
    opt.workers = 8;
    auto eight = tamper_experiment(s, suite.tuples, m.sampler, opt);
    CHECK(one == eight);
    CHECK(one[0].total == 24);

    opt.trials = 200;
    auto sd1 = extractor_sd(suite.tuples, m.ext, opt);
    opt.workers = 1;
    auto sd8 = extractor_sd(suite.tuples, m.ext, opt);
    CHECK(sd1 == sd8);
}

TEST_CASE("extractor SD of identity tampers is the SD of the output from uniform") {
    // With identity tampers the tampered value equals the output, so the joint is far from (U, out).
    auto& m = micro();
    const std::size_t n = m.p.n;
    ExperimentOptions opt;
    opt.trials = 2000;
    opt.coarse_bits = 2;
    TamperTuple ident = {{Tamper::identity(n), Tamper::identity(n)}};
    TamperTuple consts = {{Tamper::constant(BitString(n)), Tamper::constant(BitString(n))}};
    auto sd = extractor_sd({ident, consts}, m.ext, opt);
    CHECK(sd[0] > 0.6);  // ideal 1 - 1/4
    CHECK(sd[1] < 0.05);
}
