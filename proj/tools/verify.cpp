#include "verify.hpp"

#include "nmc/nmcode.hpp"

#include <set>
#include <string>

namespace nmc::cli {

using nlohmann::json;

namespace {

json suite(const std::string& name, bool pass, json measured) {
    return {{"name", name}, {"pass", pass}, {"measured", std::move(measured)}};
}

json params_suite(const InvertibleParams& p) {
    auto v = validate(p);
    json list = json::array();
    for (const auto& e : v) list.push_back({{"label", e.label}, {"message", e.message}});
    return suite("params.validate", v.empty(), {{"violations", list}});
}

json gf2_suite(Rng& rng, uint64_t trials) {
    uint64_t bad = 0, consistent = 0;
    for (uint64_t i = 0; i < trials; ++i) {
        std::vector<BitString> rows;
        for (int r = 0; r < 10; ++r) rows.push_back(rng.bits(12));
        GF2Matrix A = GF2Matrix::from_rows(rows, 12);
        BitString b = A.apply(rng.bits(12));
        auto sol = solve_affine(A, b);
        if (!std::holds_alternative<AffineSubspace>(sol)) {
            ++bad;
            continue;
        }
        ++consistent;
        if (A.apply(sample_subspace(std::get<AffineSubspace>(sol), rng)) != b) ++bad;
    }
    return suite("gf2.solve", bad == 0, {{"systems", consistent}, {"failures", bad}});
}

json field_suite() {
    Field F(FieldSpec{8, 0x11B});
    uint64_t v = F.mul(0x53, 0xCA);
    return suite("field.mul", v == 1, {{"product", v}});
}

json ip_suite() {
    const IPSpec spec{8, 2};
    Tally t;
    for (uint64_t x = 0; x < 256; ++x)
        for (uint64_t y = 0; y < 256; ++y) {
            BitString ys = BitString::from_uint(y, 8);
            t.add(ip_extract(BitString::from_uint(x, 8), ys, spec).to_bits() + ys.to_bits());
        }
    ExactDist real = exact_dist(t, 1024);
    ExactDist ideal = uniform_exact(1024, 10);
    Rational sd = stat_dist(real, ideal);
    Rational bound(1, 8);
    return suite("ip.bound", sd <= bound, {{"sd", to_string(sd)}, {"bound", to_string(bound)}});
}

json linearity_suite(Rng& rng, uint64_t trials) {
    uint64_t bad = 0;
    LSESpec lse{256, 16, 16};
    IExt E(IExtSpec{256, 16, 1});
    for (uint64_t i = 0; i < trials; ++i) {
        BitString x = rng.bits(256), x2 = rng.bits(256);
        BitString s = rng.bits(lse.d());
        if (lse_extract(x ^ x2, s, lse) != (lse_extract(x, s, lse) ^ lse_extract(x2, s, lse))) ++bad;
        BitString t = rng.bits(16);
        if (E.apply(x ^ x2, t) != (E.apply(x, t) ^ E.apply(x2, t))) ++bad;
    }
    return suite("extractors.linearity", bad == 0, {{"triples", trials}, {"failures", bad}});
}

json rs_suite() {
    RSCode code(standard_field(3), 2, 7);
    std::vector<std::vector<uint64_t>> words;
    for (uint64_t a = 0; a < 8; ++a)
        for (uint64_t b = 0; b < 8; ++b) words.push_back(code.encode({a, b}));
    std::size_t worst = 0, pairs = 0;
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = 0; j < words.size(); ++j) {
            if (i == j) continue;
            ++pairs;
            std::size_t agree = 0;
            for (std::size_t k = 0; k < 7; ++k) agree += words[i][k] == words[j][k];
            worst = std::max(worst, agree);
        }
    return suite("rs.distance", worst <= 1, {{"pairs", pairs}, {"max_agreement", worst}});
}

json sampler_suite(Rng& rng, uint64_t trials) {
    const SamplerSpec spec{11, 4096, 64};
    uint64_t hits = 0;
    for (uint64_t i = 0; i < trials; ++i) {
        std::set<std::size_t> S;
        while (S.size() < spec.n / 10) S.insert(1 + rng.below(spec.n));
        auto T = samp(rng.bits(spec.r), spec);
        hits += std::any_of(T.begin(), T.end(), [&](std::size_t j) { return S.count(j) > 0; });
    }
    double rate = static_cast<double>(hits) / static_cast<double>(trials);
    return suite("sampler.hit_rate", rate >= 0.99, {{"sets", trials}, {"rate", rate}});
}

json fiber_suite(const InvertibleParams& p) {
    auto d = describe_fiber(p);
    std::size_t expect = 2 * p.n - 2 * p.n_q;
    return suite("preimage.fiber_total", d.total_log2() == expect,
                 {{"total_log2", d.total_log2()}, {"expected", expect}});
}

json preimage_suite(const PreimageSampler& sampler, Rng& rng, uint64_t trials) {
    const auto& ext = sampler.extractor();
    uint64_t bad = 0;
    for (uint64_t i = 0; i < trials; ++i) {
        BitString target = rng.bits(ext.params().out_bits());
        SeedTranscript tr = sampler.sample_transcript(rng);
        auto [x, y] = sampler.samp_nm(tr, target, rng);
        InmextTrace trace;
        if (ext.evaluate(x, y, &trace) != target || transcript_of(trace) != tr) ++bad;
    }
    return suite("preimage.roundtrip", bad == 0, {{"samples", trials}, {"failures", bad}});
}

json completeness_suite(const PreimageSampler& sampler, Rng& rng, uint64_t trials) {
    const auto& ext = sampler.extractor();
    uint64_t bad = 0;
    for (uint64_t i = 0; i < trials; ++i) {
        BitString s = rng.bits(ext.params().out_bits());
        if (dec(enc(s, sampler, rng), ext) != s) ++bad;
    }
    return suite("nmcode.completeness", bad == 0, {{"messages", trials}, {"failures", bad}});
}

json metric_suite(Rng& rng, uint64_t trials) {
    auto random_dist = [&] {
        Tally t;
        for (int i = 0; i < 8; ++i) t.add(std::to_string(rng.below(8)), 1 + rng.below(5));
        return exact_dist(t, 8);
    };
    uint64_t bad = 0;
    for (uint64_t i = 0; i < trials; ++i) {
        auto a = random_dist(), b = random_dist(), c = random_dist();
        Rational ab = stat_dist(a, b);
        if (ab != stat_dist(b, a) || stat_dist(a, a) != 0 || ab > stat_dist(a, c) + stat_dist(c, b) || ab > 1) ++bad;
    }
    return suite("stats.metric", bad == 0, {{"triples", trials}, {"failures", bad}});
}

json masking_suite(const PreimageSampler& sampler, Rng& rng, const VerifyOptions& vo) {
    const auto& p = sampler.extractor().params();
    BitString s1 = rng.bits(p.out_bits()), s2 = rng.bits(p.out_bits());
    TamperTuple ident = {{Tamper::identity(p.n), Tamper::identity(p.n)}};
    TamperTuple consts = {{Tamper::constant(rng.bits(p.n)), Tamper::constant(rng.bits(p.n))}};
    ExperimentOptions opt;
    opt.trials = 10;
    opt.seed = vo.seed;
    opt.workers = vo.workers;
    auto r = nm_test(s1, s2, {ident, consts}, 0.0, sampler, opt);
    return suite("nmcode.trivial_tampers", r[0].sd == 0 && r[1].sd == 0,
                 {{"identity_sd", r[0].sd}, {"constant_sd", r[1].sd}});
}

json worker_suite(const PreimageSampler& sampler, Rng& rng, const VerifyOptions& vo) {
    const auto& p = sampler.extractor().params();
    BitString s = rng.bits(p.out_bits());
    auto suite_tuples = make_suite("mixed", p.n, 2, 2, rng).tuples;
    ExperimentOptions opt;
    opt.trials = 16;
    opt.chunk = 3;
    opt.seed = vo.seed;
    opt.coarse_bits = 4;
    auto one = tamper_experiment(s, suite_tuples, sampler, opt);
    opt.workers = 8;
    auto many = tamper_experiment(s, suite_tuples, sampler, opt);
    return suite("parallel.determinism", one == many, {{"workers", opt.workers}, {"trials", opt.trials}});
}

}  // namespace

json run_verify(const InvertibleParams& p, const VerifyOptions& opt) {
    Rng root(opt.seed);
    json suites = json::array();
    suites.push_back(params_suite(p));
    if (!suites.back()["pass"].get<bool>()) return {{"pass", false}, {"suites", suites}};

    InvertibleExtractor ext(p);
    PreimageSampler sampler(ext);
    Rng r1 = root.split(1), r2 = root.split(2), r3 = root.split(3), r4 = root.split(4), r5 = root.split(5),
        r6 = root.split(6), r7 = root.split(7), r8 = root.split(8);
    suites.push_back(gf2_suite(r1, opt.trials));
    suites.push_back(field_suite());
    suites.push_back(ip_suite());
    suites.push_back(linearity_suite(r2, opt.trials));
    suites.push_back(rs_suite());
    suites.push_back(sampler_suite(r3, 10 * opt.trials));
    suites.push_back(fiber_suite(p));
    suites.push_back(preimage_suite(sampler, r4, std::min<uint64_t>(opt.trials, 20)));
    suites.push_back(completeness_suite(sampler, r5, opt.trials));
    suites.push_back(metric_suite(r6, opt.trials));
    suites.push_back(masking_suite(sampler, r7, opt));
    suites.push_back(worker_suite(sampler, r8, opt));

    bool pass = true;
    for (const auto& s : suites) pass = pass && s["pass"].get<bool>();
    return {{"pass", pass}, {"seed", opt.seed}, {"trials", opt.trials}, {"suites", suites}};
}

}  // namespace nmc::cli
