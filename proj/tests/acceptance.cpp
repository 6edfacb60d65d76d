// Acceptance harness: one PASS/FAIL line per criterion. `--only N` runs a single criterion.
#include "nmc/nmcode.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>
#include <unistd.h>

using namespace nmc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string pfile(const char* name) { return std::string(NMC_PARAMS_DIR) + "/" + name; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int prec = 4) {
    std::ostringstream os;
    os.precision(prec);
    os << v;
    return os.str();
}

unsigned hw_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// Schoolbook GF(2^deg) product; poly includes the x^deg term. Independent of the library's tables.
uint64_t gf_mul_ref(uint64_t a, uint64_t b, uint64_t poly, unsigned deg) {
    uint64_t r = 0;
    for (unsigned i = 0; i < deg; ++i)
        if ((b >> i) & 1) r ^= a << i;
    for (unsigned i = 2 * deg; i-- > deg;)
        if ((r >> i) & 1) r ^= poly << (i - deg);
    return r;
}

uint64_t gf_pow_ref(uint64_t a, uint64_t e, uint64_t poly, unsigned deg) {
    uint64_t r = 1;
    while (e--) r = gf_mul_ref(r, a, poly, deg);
    return r;
}

uint64_t gf_inv_ref(uint64_t a, uint64_t poly, unsigned deg) {
    for (uint64_t c = 1; c < (uint64_t{1} << deg); ++c)
        if (gf_mul_ref(a, c, poly, deg) == 1) return c;
    return 0;
}

// --- 1 ---------------------------------------------------------------------------------------------

Outcome ip_error_bound() {
    const IPSpec spec{8, 2};
    const uint64_t poly = 0x7;
    auto ip_ref = [&](uint64_t x, uint64_t y) {
        uint64_t acc = 0;
        for (int i = 3; i >= 0; --i) acc ^= gf_mul_ref((x >> (2 * i)) & 3, (y >> (2 * i)) & 3, poly, 2);
        return acc;
    };
    std::vector<uint8_t> table(1 << 16);
    uint64_t mismatches = 0;
    for (uint64_t x = 0; x < 256; ++x)
        for (uint64_t y = 0; y < 256; ++y) {
            uint64_t lib = ip_extract(BitString::from_uint(x, 8), BitString::from_uint(y, 8), spec).get_bits(0, 2);
            table[x << 8 | y] = static_cast<uint8_t>(lib);
            mismatches += lib != ip_ref(x, y);
        }

    // SD((IP(X,Y), Y), (U, Y)) for X uniform on the listed x values, Y on the listed y values.
    auto sd = [&](const std::vector<uint64_t>& xs, const std::vector<uint64_t>& ys) {
        ExactDist real{4 * 256, {}}, ideal{4 * 256, {}};
        std::map<std::pair<uint64_t, uint64_t>, uint64_t> counts;
        for (auto x : xs)
            for (auto y : ys) ++counts[{table[x << 8 | y], y}];
        const Rational total(xs.size() * ys.size());
        for (auto& [k, c] : counts) real.weights[std::to_string(k.first) + "|" + std::to_string(k.second)] = Rational(c) / total;
        for (uint64_t o = 0; o < 4; ++o)
            for (auto y : ys)
                ideal.weights[std::to_string(o) + "|" + std::to_string(y)] = Rational(1, 4 * ys.size());
        check_dist(real);
        check_dist(ideal);
        return stat_dist(real, ideal);
    };

    auto flat = [](uint64_t prefix) {
        std::vector<uint64_t> v;
        for (uint64_t r = 0; r < 64; ++r) v.push_back(prefix << 6 | r);
        return v;
    };
    const Rational flat_bound(1, 2), full_bound(1, 8);
    Rational worst = 0;
    for (uint64_t a = 0; a < 4; ++a)
        for (uint64_t b = 0; b < 4; ++b) worst = std::max(worst, sd(flat(a), flat(b)));
    std::vector<uint64_t> all(256);
    for (uint64_t i = 0; i < 256; ++i) all[i] = i;
    Rational full = sd(all, all);
    bool formula = std::abs(spec.error_bound(6, 6) - 0.5) < 1e-12 && std::abs(spec.error_bound(8, 8) - 0.125) < 1e-12;
    return {mismatches == 0 && worst <= flat_bound && full <= full_bound && formula,
            "max SD over 16 flat pairs = " + to_string(worst) + " <= 1/2, full entropy SD = " + to_string(full) +
                " <= 1/8, oracle mismatches = " + std::to_string(mismatches)};
}

// --- 2 ---------------------------------------------------------------------------------------------

Outcome iext_fiber_exactness() {
    IExtSpec spec{12, 8, 0};
    IExt E(spec);
    uint64_t bad = 0, checked = 0;
    for (uint64_t s = 0; s < 256; ++s) {
        std::vector<uint64_t> count(16);
        for (uint64_t x = 0; x < 4096; ++x) ++count[E.eval(BitString::from_uint(x, 12), 0, s)];
        for (auto c : count) {
            ++checked;
            bad += c != 256;
        }
    }
    return {bad == 0 && checked == 4096,
            std::to_string(checked) + " (seed, output) fibers, " + std::to_string(bad) + " not of size 2^8"};
}

// --- 3 ---------------------------------------------------------------------------------------------

Outcome linearity() {
    uint64_t bad = 0, exhaustive = 0, random = 0;
    {
        LSESpec spec{8, 2, 2};
        for (uint64_t s = 0; s < (uint64_t{1} << spec.d()); ++s) {
            BitString sb = BitString::from_uint(s, static_cast<unsigned>(spec.d()));
            std::vector<BitString> img(256);
            for (uint64_t x = 0; x < 256; ++x) img[x] = lse_extract(BitString::from_uint(x, 8), sb, spec);
            for (uint64_t x = 0; x < 256; ++x)
                for (uint64_t y = 0; y < 256; ++y, ++exhaustive) bad += img[x ^ y] != (img[x] ^ img[y]);
        }
    }
    {
        IExt E(IExtSpec{12, 8, 0});
        for (uint64_t s = 0; s < 256; ++s) {
            std::vector<uint64_t> img(4096);
            for (uint64_t x = 0; x < 4096; ++x) img[x] = E.eval(BitString::from_uint(x, 12), 0, s);
            for (uint64_t x = 0; x < 4096; ++x)
                for (uint64_t y = x; y < 4096; y += 97, ++exhaustive) bad += img[x ^ y] != (img[x] ^ img[y]);
            // Every pair against a basis covers the rest: additivity on basis vectors for all x.
            for (uint64_t x = 0; x < 4096; ++x)
                for (unsigned j = 0; j < 12; ++j, ++exhaustive) bad += img[x ^ (1u << j)] != (img[x] ^ img[1u << j]);
        }
    }
    Rng rng(3);
    LSESpec lse{256, 16, 16};
    IExtSpec ispec{256, 16, 1};
    IExt E(ispec);
    for (int i = 0; i < 10000; ++i, ++random) {
        BitString x = rng.bits(256), y = rng.bits(256);
        BitString s = rng.bits(lse.d()), t = rng.bits(16);
        bad += lse_extract(x ^ y, s, lse) != (lse_extract(x, s, lse) ^ lse_extract(y, s, lse));
        bad += iext(x ^ y, t, ispec) != (iext(x, t, ispec) ^ iext(y, t, ispec));
    }
    return {bad == 0, std::to_string(exhaustive) + " exhaustive and " + std::to_string(random) +
                          " random triples (n = 256), failures = " + std::to_string(bad)};
}

// --- 4 ---------------------------------------------------------------------------------------------

Outcome preimage_uniformity() {
    auto p = load_invertible(pfile("micro.json"));
    const std::size_t total = describe_fiber(p).total_log2();
    // Any valid schedule has n >= n1 + n6 + 4*ell*n_x with n6 >= 2*n_q, so 2n - 2n_q is far above 16.
    const bool attainable = total <= 16;

    // Diagnostics on the shipped micro schedule: decode identity for every draw, and the x3 and y3
    // leading bytes (uniform under the fiber law) against the uniform law.
    InvertibleExtractor ext(p);
    PreimageSampler sampler(ext);
    Rng rng(4);
    BitString target = rng.bits(p.out_bits());
    const uint64_t draws = 1000000;
    std::vector<uint64_t> x3(256), y3(256);
    uint64_t wrong = 0;
    for (uint64_t i = 0; i < draws; ++i) {
        auto [x, y] = sampler.sample_preimage(target, rng);
        wrong += ext.evaluate(x, y) != target;
        ++x3[x.get_bits(ext.x3_pos(), 8)];
        ++y3[y.get_bits(ext.x3_pos(), 8)];
    }
    double px = chi_square_uniform(x3), py = chi_square_uniform(y3);
    return {attainable && wrong == 0,
            "no valid schedule has total fiber <= 2^16 (micro: 2^" + std::to_string(total) +
                "), exhaustive enumeration impossible; diagnostics over " + std::to_string(draws) +
                " draws: decode failures = " + std::to_string(wrong) + ", x3 byte p = " + fmt(px) + ", y3 byte p = " +
                fmt(py)};
}

// --- 5 ---------------------------------------------------------------------------------------------

// log2 of the fiber for one (z, transcript, output), by exact solution counts of every linear system.
std::vector<std::size_t> fiber_counts(const InvertibleExtractor& ext, const PreimageSampler& sampler,
                                      const SeedTranscript& tr, const BitString& x, const BitString& y, bool flip_b) {
    const auto& p = ext.params();
    InmextTrace trace;
    ext.evaluate(x, y, &trace);
    std::vector<BitString> q(p.ell + 1);
    q[0] = trace.q1;
    for (std::size_t h = 1; h <= p.ell; ++h)
        q[h] = ext.ila().step(x, ext.w_pos(4 * h - 3), y, ext.v_pos(2 * p.window() * (h - 1) + 1), q[h - 1],
                              tr.z.get(h - 1));

    std::size_t x_blocks = 0, y_blocks = 0, qbar = 0, q_mid = 0, q1 = 0, y3 = 0;
    for (std::size_t h = 1; h <= p.ell; ++h) {
        StepFiberInputs in;
        in.h = h;
        in.b = tr.z.get(h - 1) != flip_b;
        in.seeds = tr.steps[h - 1];
        in.qbar_value = trace.steps[h - 1].qbar;
        in.q_next = q[h];
        if (h == 1) {
            in.x3 = x.sub(ext.x3_pos(), p.n6);
            in.q1_value = trace.q1;
        }
        StepFiber f = step_fiber(ext, in);
        for (const auto& w : f.w) x_blocks += w.dim();
        for (const auto& a : f.a_blocks) y_blocks += a.dim();
        for (const auto& b : f.b_blocks) y_blocks += b.dim();
        qbar += f.qbar.dim();
        if (h == 1) {
            q1 = f.q_in.dim();
            y3 = f.y3->dim();
        } else {
            q_mid += f.q_in.dim();
        }
    }
    auto sys = sampler.rs_system(trace.z.T);
    std::size_t free_half = sys->solution_dim();
    return {p.n6, y3, q1, x_blocks, qbar, q_mid, y_blocks, free_half, free_half};
}

Outcome fiber_invariance() {
    auto p = load_invertible(pfile("micro.json"));
    InvertibleExtractor ext(p);
    PreimageSampler sampler(ext);
    Rng rng(5);
    std::set<std::vector<std::size_t>> seen;
    std::set<std::string> transcripts;
    const auto described = describe_fiber(p);
    std::vector<std::size_t> expect;
    for (const auto& c : described.components) expect.push_back(c.dim);
    std::size_t choices = 0;
    for (; choices < 16; ++choices) {
        SeedTranscript tr = sampler.sample_transcript(rng);
        BitString target = rng.bits(p.out_bits());
        auto [x, y] = sampler.samp_nm(tr, target, rng);
        std::string key = tr.z.to_hex();
        for (const auto& s : tr.steps) key += ":" + std::to_string(s.s1) + "," + std::to_string(s.r1);
        transcripts.insert(key);
        for (bool flip : {false, true}) seen.insert(fiber_counts(ext, sampler, tr, x, y, flip));
    }
    bool pass = seen.size() == 1 && *seen.begin() == expect && transcripts.size() == choices;
    std::size_t sum = 0;
    for (auto d : *seen.begin()) sum += d;
    return {pass, std::to_string(transcripts.size()) + " distinct (z, transcript) choices x 2 branch settings, " +
                      std::to_string(seen.size()) + " distinct count vector(s); log2 fiber = " + std::to_string(sum) +
                      " (described " + std::to_string(described.conditional_log2()) + ")"};
}

// --- 6 ---------------------------------------------------------------------------------------------

Outcome completeness() {
    auto t0 = std::chrono::steady_clock::now();
    auto p = load_invertible(pfile("default.json"));
    InvertibleExtractor ext(p);
    PreimageSampler sampler(ext);
    Rng rng(6);
    uint64_t bad = 0;
    for (int i = 0; i < 1000; ++i) {
        BitString s = rng.bits(p.out_bits());
        Codeword c = enc(s, sampler, rng);
        bad += c.left.size() != p.n || c.right.size() != p.n || dec(c, ext) != s;
    }
    double t = seconds_since(t0);
    return {bad == 0 && t < 60, "1000 messages at the default schedule, failures = " + std::to_string(bad) + ", " +
                                    fmt(t, 3) + " s (limit 60 s)"};
}

// --- 7 ---------------------------------------------------------------------------------------------

Outcome rs_distance() {
    const Field& F = standard_field(3);
    const uint64_t poly = F.spec().poly;
    RSCode code(F, 2, 7);
    std::vector<std::vector<uint64_t>> words;
    uint64_t mismatches = 0;
    for (uint64_t a = 0; a < 8; ++a)
        for (uint64_t b = 0; b < 8; ++b) {
            auto w = code.encode({a, b});
            for (std::size_t i = 1; i <= 7; ++i)
                mismatches += w[i - 1] != (a ^ gf_mul_ref(b, code.eval_point(i), poly, 3));
            words.push_back(w);
        }
    std::set<uint64_t> points(code.eval_points().begin(), code.eval_points().end());
    std::size_t pairs = 0, worst = 0;
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = 0; j < words.size(); ++j) {
            if (i == j) continue;
            ++pairs;
            std::size_t agree = 0;
            for (std::size_t k = 0; k < 7; ++k) agree += words[i][k] == words[j][k];
            worst = std::max(worst, agree);
        }
    return {pairs == 4032 && worst <= 1 && mismatches == 0 && points.size() == 7,
            std::to_string(pairs) + " ordered pairs, max agreement = " + std::to_string(worst) +
                ", oracle mismatches = " + std::to_string(mismatches)};
}

// --- 8 ---------------------------------------------------------------------------------------------

bool det_nonzero_ref(std::vector<std::vector<uint64_t>> M, uint64_t poly, unsigned deg) {
    const std::size_t n = M.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t r = c;
        while (r < n && M[r][c] == 0) ++r;
        if (r == n) return false;
        std::swap(M[r], M[c]);
        uint64_t inv = gf_inv_ref(M[c][c], poly, deg);
        for (std::size_t i = c + 1; i < n; ++i) {
            uint64_t f = gf_mul_ref(M[i][c], inv, poly, deg);
            for (std::size_t j = c; j < n; ++j) M[i][j] ^= gf_mul_ref(f, M[c][j], poly, deg);
        }
    }
    return true;
}

Outcome vandermonde_rank() {
    const Field& F = standard_field(3);
    const uint64_t poly = F.spec().poly;
    uint64_t checked = 0, singular = 0, disagree = 0;
    for (std::size_t n = 1; n <= 7; ++n) {
        for (uint32_t mask = 1; mask < (1u << n); ++mask) {
            std::vector<std::size_t> T;
            for (std::size_t i = 0; i < n; ++i)
                if (mask >> i & 1) T.push_back(i + 1);
            // Every window of |T| consecutive coefficient columns of the n-point evaluation matrix.
            for (std::size_t from = 0; from + T.size() <= n; ++from) {
                RSCode code(F, from + T.size(), n);
                bool lib = rank(rs_constraints(code, T, from)) == T.size() * 3;
                std::vector<std::vector<uint64_t>> M(T.size(), std::vector<uint64_t>(T.size()));
                for (std::size_t r = 0; r < T.size(); ++r)
                    for (std::size_t c = 0; c < T.size(); ++c)
                        M[r][c] = gf_pow_ref(code.eval_point(T[r]), from + c, poly, 3);
                bool ref = det_nonzero_ref(M, poly, 3);
                ++checked;
                singular += !lib;
                disagree += lib != ref;
            }
        }
    }
    return {singular == 0 && disagree == 0, std::to_string(checked) + " square submatrices (n <= 7), singular = " +
                                                std::to_string(singular) + ", oracle disagreements = " +
                                                std::to_string(disagree)};
}

// --- 9 ---------------------------------------------------------------------------------------------

Outcome sampler_hit_rate() {
    const SamplerSpec spec{11, 4096, 64};
    Rng rng(9);
    uint64_t hits = 0, distinct_fail = 0;
    const uint64_t trials = 10000;
    std::vector<std::size_t> all(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) all[i] = i + 1;
    for (uint64_t i = 0; i < trials; ++i) {
        std::shuffle(all.begin(), all.end(), rng);
        std::set<std::size_t> S(all.begin(), all.begin() + spec.n / 10);
        auto T = samp(rng.bits(spec.r), spec);
        distinct_fail += std::set<std::size_t>(T.begin(), T.end()).size() != spec.t_samp;
        hits += std::any_of(T.begin(), T.end(), [&](std::size_t j) { return S.count(j) > 0; });
    }
    double rate = static_cast<double>(hits) / trials;
    return {rate >= 0.99 && distinct_fail == 0,
            "hit rate " + fmt(rate, 6) + " over " + std::to_string(trials) + " sets of density 1/10"};
}

// --- 10 --------------------------------------------------------------------------------------------

Outcome tag_distinguishing() {
    auto p = load_invertible(pfile("default.json"));
    InvertibleExtractor ext(p);
    PreimageSampler sampler(ext);
    Rng rng(10);
    std::vector<Codeword> words;
    std::vector<BitString> tags;
    for (int i = 0; i < 1000; ++i) {
        words.push_back(enc(rng.bits(p.out_bits()), sampler, rng));
        tags.push_back(ext.derive_z(words.back().left, words.back().right).z);
    }
    std::size_t tampers = 0;
    double worst = 1;
    std::string worst_name;
    for (const auto& name : suite_names()) {
        auto suite = make_suite(name, p.n, 2, 4, rng);
        for (const auto& tuple : suite.tuples)
            for (const auto& pair : tuple) {
                if (pair.has_fixed_point()) continue;
                ++tampers;
                uint64_t differ = 0;
                for (std::size_t i = 0; i < words.size(); ++i)
                    differ += ext.derive_z(pair.f.apply(words[i].left), pair.g.apply(words[i].right)).z != tags[i];
                double rate = static_cast<double>(differ) / words.size();
                if (rate < worst) {
                    worst = rate;
                    worst_name = name + " " + pair.name();
                }
            }
    }
    return {tampers > 0 && worst >= 0.99, std::to_string(tampers) + " fixed-point-free tampers x 1000 codewords, min z != z' rate " +
                                              fmt(worst, 6) + (worst_name.empty() ? "" : " (" + worst_name + ")")};
}

// --- 11 --------------------------------------------------------------------------------------------

Outcome nm_smoke() {
    auto t0 = std::chrono::steady_clock::now();
    auto p = load_invertible(pfile("micro.json"));
    InvertibleExtractor ext(p);
    PreimageSampler sampler(ext);
    Rng rng(11);
    // Tuples pair each of bit-flip, constant and affine with the next one in that cycle.
    auto suite = make_suite("mixed", p.n, 2, 3, rng);
    BitString s1 = rng.bits(p.out_bits()), s2 = rng.bits(p.out_bits());
    ExperimentOptions opt;
    opt.trials = 1000000;
    opt.workers = hw_workers();
    opt.seed = 1111;
    opt.coarse_bits = 4;
    auto nm = nm_test(s1, s2, suite.tuples, 0.15, sampler, opt);
    auto ex = extractor_sd(suite.tuples, ext, opt);
    double t = seconds_since(t0);
    bool pass = t < 1800;
    std::string detail;
    for (std::size_t k = 0; k < nm.size(); ++k) {
        pass = pass && nm[k].pass && ex[k] <= 0.15;
        detail += suite.tuples[k][0].name() + "+" + suite.tuples[k][1].name() + ": masked SD " + fmt(nm[k].sd) +
                  ", extractor SD " + fmt(ex[k]) + "; ";
    }
    return {pass, detail + "1e6 trials, 4-bit labels, " + fmt(t, 4) + " s (limit 1800 s)"};
}

// --- 12 --------------------------------------------------------------------------------------------

std::string slurp(const fs::path& f) {
    std::ifstream in(f, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome cli_determinism() {
    const std::string cli = NMC_CLI_PATH;
    fs::path dir = fs::temp_directory_path() / ("nmc_accept_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string micro = pfile("micro.json");

    // Inputs for decode come from a first encode run.
    std::string cw = (dir / "cw.json").string();
    if (std::system((cli + " encode --params " + micro + " --seed 5 --out " + cw).c_str()) != 0)
        return {false, "could not produce a codeword for decode"};

    struct Cmd {
        std::string name, args;
        bool has_report = false;
    };
    std::vector<Cmd> cmds = {
        {"params", "params --check " + micro},
        {"extract-inmext", "extract --alg inmext --params " + micro},
        {"extract-nmext", "extract --alg nmext --params " + pfile("seedless_micro.json")},
        {"extract-snmext", "extract --alg snmext --params " + pfile("seeded_micro.json")},
        {"encode", "encode --params " + micro + " --count 4"},
        {"decode", "decode --params " + micro + " --in " + cw},
        {"preimage", "preimage --params " + micro + " --samples 4"},
        {"preimage-count", "preimage --params " + micro + " --count"},
        {"tamper-test", "tamper-test --params " + micro + " --suite mixed --trials 64 --threshold 1 --extractor"},
        {"verify", "verify --params " + micro + " --trials 20", true},
        {"bench", "bench --params " + micro + " --trials 3"},
    };
    std::vector<std::string> differing;
    for (const auto& c : cmds) {
        std::vector<std::string> outs;
        int idx = 0;
        for (unsigned workers : {1u, 1u, 8u}) {
            fs::path out = dir / (c.name + "_" + std::to_string(idx) + ".out");
            fs::path rep = dir / (c.name + "_" + std::to_string(idx) + ".report");
            std::string line = cli + " " + c.args + " --seed 42 --workers " + std::to_string(workers) + " --out " +
                               out.string() + (c.has_report ? " --report " + rep.string() : "") + " 2>/dev/null";
            int rc = std::system(line.c_str());
            outs.push_back(std::to_string(rc) + "\n" + slurp(out) + (c.has_report ? slurp(rep) : ""));
            ++idx;
        }
        if (outs[0] != outs[1] || outs[0] != outs[2] || outs[0].size() < 8) differing.push_back(c.name);
    }
    fs::remove_all(dir);
    std::string list;
    for (const auto& d : differing) list += (list.empty() ? "" : ", ") + d;
    return {differing.empty(), std::to_string(cmds.size()) + " subcommand invocations x (2 runs, 1 vs 8 workers)" +
                                   (differing.empty() ? ", all byte-identical" : ", differing: " + list)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int only = 0;
    app.add_option("--only", only, "run a single criterion")->check(CLI::Range(1, 12));
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"ip error bound", ip_error_bound},
        {"iext fiber exactness", iext_fiber_exactness},
        {"linearity", linearity},
        {"preimage uniformity", preimage_uniformity},
        {"fiber-size invariance", fiber_invariance},
        {"perfect completeness", completeness},
        {"rs distance", rs_distance},
        {"vandermonde rank", vandermonde_rank},
        {"sampler hit rate", sampler_hit_rate},
        {"tamper-distinguishing tag", tag_distinguishing},
        {"non-malleability smoke test", nm_smoke},
        {"cli determinism", cli_determinism},
    };
    const double limits[] = {10, 1e9, 1e9, 600, 1e9, 60, 1e9, 1e9, 1e9, 1e9, 1800, 1e9};

    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only && static_cast<std::size_t>(only) != i + 1) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double t = seconds_since(t0);
        if (t > limits[i]) {
            o.pass = false;
            o.detail += " [runtime limit exceeded]";
        }
        all = all && o.pass;
        std::printf("criterion %zu (%s): %s | %s | %.2f s\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                    o.detail.c_str(), t);
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
