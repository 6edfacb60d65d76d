#include "verify.hpp"

#include "nmc/nmcode.hpp"
#include "nmc/parallel.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace nmc;
using nlohmann::json;

namespace {

enum Exit { ok = 0, io_error = 1, invalid = 2, verify_failed = 3 };

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct VerifyFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string params;
    uint64_t seed = 0;
    uint64_t trials = 0;
    double threshold = 0.15;
    std::string in;
    std::string out;
    std::string report;
    unsigned workers = 1;
};

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f || !(f << text)) throw IoError("cannot write " + path);
}

void emit(const Config& cfg, const json& j) {
    std::string text = j.dump(2) + "\n";
    if (cfg.out.empty()) std::cout << text;
    else write_file(cfg.out, text);
}

std::string trim(std::string s) {
    auto sp = [](unsigned char c) { return std::isspace(c); };
    while (!s.empty() && sp(s.back())) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && sp(s[i])) ++i;
    return s.substr(i);
}

// --in takes either a literal or the path of a file holding one.
std::string input_text(const std::string& in) {
    if (in.empty()) return {};
    std::error_code ec;
    if (std::filesystem::is_regular_file(in, ec)) return trim(read_file(in));
    return trim(in);
}

BitString parse_hex(const std::string& hex, std::size_t bits, const std::string& what) {
    std::string h = hex;
    if (h.rfind("0x", 0) == 0) h = h.substr(2);
    if (h.size() != (bits + 3) / 4)
        throw std::invalid_argument(what + " must be " + std::to_string(bits) + " bits (" +
                                    std::to_string((bits + 3) / 4) + " hex digits)");
    return BitString::from_hex(h, bits);
}

json hex_json(const BitString& b) { return {{"bits", b.size()}, {"hex", b.to_hex()}}; }

std::string hex_field(const json& j, const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("input lacks \"") + key + "\"");
    const json& v = j.at(key);
    if (v.is_string()) return v.get<std::string>();
    return v.at("hex").get<std::string>();
}

std::pair<BitString, BitString> parse_pair(const std::string& text, std::size_t left_bits, std::size_t right_bits) {
    json j = json::parse(text);
    return {parse_hex(hex_field(j, "left"), left_bits, "left"), parse_hex(hex_field(j, "right"), right_bits, "right")};
}

json load_params_json(const Config& cfg) {
    if (cfg.params.empty()) throw std::invalid_argument("--params is required");
    std::string text = read_file(cfg.params);
    return json::parse(text);
}

std::string kind_of(const json& j) { return j.value("kind", std::string("invertible")); }

InvertibleParams invertible(const Config& cfg) {
    json j = load_params_json(cfg);
    if (kind_of(j) != "invertible") throw std::invalid_argument("this subcommand needs an invertible schedule");
    return j.get<InvertibleParams>();
}

json violations_json(const std::vector<Violation>& v) {
    json out = json::array();
    for (const auto& e : v) out.push_back({{"label", e.label}, {"message", e.message}});
    return out;
}

json fiber_json(const InvertibleParams& p) {
    auto d = describe_fiber(p);
    json comps = json::array();
    for (const auto& c : d.components) comps.push_back({{"name", c.name}, {"log2", c.dim}});
    return {{"components", comps},
            {"transcript_bits", d.transcript_bits},
            {"conditional_log2", d.conditional_log2()},
            {"total_log2", d.total_log2()}};
}

int cmd_params(const Config& cfg) {
    json j = load_params_json(cfg);
    std::string kind = kind_of(j);
    json out{{"kind", kind}};
    std::vector<Violation> v;
    if (kind == "invertible") {
        auto p = j.get<InvertibleParams>();
        v = validate(p);
        out["params"] = p;
        if (v.empty()) out["fiber"] = fiber_json(p);
    } else if (kind == "seedless") {
        auto p = j.get<SeedlessParams>();
        v = validate(p);
        out["params"] = p;
    } else if (kind == "seeded") {
        auto p = j.get<SeededParams>();
        v = validate(p);
        out["params"] = p;
    } else {
        throw std::invalid_argument("unknown schedule kind " + kind);
    }
    out["violations"] = violations_json(v);
    emit(cfg, out);
    if (!v.empty()) {
        std::cerr << "schedule fails validation: " << describe(v) << "\n";
        return invalid;
    }
    return ok;
}

int cmd_extract(const Config& cfg, const std::string& alg) {
    json j = load_params_json(cfg);
    Rng rng(cfg.seed);
    auto sources = [&](std::size_t lb, std::size_t rb) {
        std::string text = input_text(cfg.in);
        if (text.empty()) {
            BitString x = rng.bits(lb);
            return std::pair{x, rng.bits(rb)};
        }
        return parse_pair(text, lb, rb);
    };
    BitString x, y, out;
    if (alg == "inmext") {
        if (kind_of(j) != "invertible") throw std::invalid_argument("inmext needs an invertible schedule");
        InvertibleExtractor ext(j.get<InvertibleParams>());
        std::tie(x, y) = sources(ext.params().n, ext.params().n);
        out = inmext(x, y, ext);
    } else if (alg == "nmext") {
        if (kind_of(j) != "seedless") throw std::invalid_argument("nmext needs a seedless schedule");
        SeedlessExtractor ext(j.get<SeedlessParams>());
        std::tie(x, y) = sources(ext.params().n, ext.params().n);
        out = nmext(x, y, ext);
    } else if (alg == "snmext") {
        if (kind_of(j) != "seeded") throw std::invalid_argument("snmext needs a seeded schedule");
        SeededExtractor ext(j.get<SeededParams>());
        std::tie(x, y) = sources(ext.params().n, ext.params().d);
        out = snmext(x, y, ext);
    } else {
        throw std::invalid_argument("unknown extractor " + alg);
    }
    json res{{"alg", alg}, {"output", hex_json(out)}};
    if (cfg.in.empty()) res["sources"] = {{"left", hex_json(x)}, {"right", hex_json(y)}};
    emit(cfg, res);
    return ok;
}

int cmd_encode(const Config& cfg, uint64_t count) {
    auto p = invertible(cfg);
    InvertibleExtractor ext(p);
    PreimageSampler sampler(ext);
    Rng root(cfg.seed);
    std::string text = input_text(cfg.in);
    BitString s = text.empty() ? root.split(0).bits(p.out_bits()) : parse_hex(text, p.out_bits(), "message");
    std::vector<Codeword> words(count);
    run_chunks<int>(count, 1, cfg.workers,
                    [&](uint64_t c, uint64_t, uint64_t) {
                        Rng rng = root.split(c + 1);
                        words[c] = enc(s, sampler, rng);
                        return 0;
                    },
                    [](int&, int) {}, 0);
    json list = json::array();
    for (const auto& w : words) list.push_back({{"left", w.left.to_hex()}, {"right", w.right.to_hex()}});
    json res{{"message", hex_json(s)}, {"codeword_bits", 2 * p.n}};
    if (count == 1) {
        res["left"] = list[0]["left"];
        res["right"] = list[0]["right"];
    } else {
        res["codewords"] = list;
    }
    emit(cfg, res);
    return ok;
}

int cmd_decode(const Config& cfg) {
    auto p = invertible(cfg);
    InvertibleExtractor ext(p);
    std::string text = input_text(cfg.in);
    if (text.empty()) throw std::invalid_argument("decode needs --in with a codeword");
    auto [l, r] = parse_pair(text, p.n, p.n);
    emit(cfg, {{"message", hex_json(dec({l, r}, ext))}});
    return ok;
}

int cmd_preimage(const Config& cfg, const std::string& output, uint64_t count, bool census) {
    auto p = invertible(cfg);
    if (census) {
        emit(cfg, {{"fiber", fiber_json(p)}, {"output_bits", p.out_bits()}});
        return ok;
    }
    InvertibleExtractor ext(p);
    PreimageSampler sampler(ext);
    Rng root(cfg.seed);
    std::string hex = output.empty() ? input_text(cfg.in) : output;
    BitString target = hex.empty() ? root.split(0).bits(p.out_bits()) : parse_hex(hex, p.out_bits(), "output");
    std::vector<std::pair<BitString, BitString>> samples(count);
    run_chunks<int>(count, 1, cfg.workers,
                    [&](uint64_t c, uint64_t, uint64_t) {
                        Rng rng = root.split(c + 1);
                        samples[c] = sampler.sample_preimage(target, rng);
                        return 0;
                    },
                    [](int&, int) {}, 0);
    json list = json::array();
    for (const auto& [x, y] : samples) list.push_back({{"left", x.to_hex()}, {"right", y.to_hex()}});
    emit(cfg, {{"output", hex_json(target)}, {"source_bits", p.n}, {"samples", list}});
    return ok;
}

struct TamperArgs {
    std::string suite = "mixed";
    std::size_t tuples = 3;
    std::size_t t = 2;
    unsigned coarse = 4;
    std::string table;
    bool extractor = false;
};

int cmd_tamper(const Config& cfg, const TamperArgs& ta) {
    auto p = invertible(cfg);
    InvertibleExtractor ext(p);
    PreimageSampler sampler(ext);
    Rng root(cfg.seed);
    Rng suite_rng = root.split(0), msg_rng = root.split(1);

    TamperSuite suite{ta.suite, {}};
    if (ta.suite == "table") {
        if (ta.table.empty()) throw std::invalid_argument("the table suite needs --table");
        std::vector<uint64_t> images;
        try {
            images = load_tamper_table(ta.table);
        } catch (const std::runtime_error& e) {
            throw IoError(e.what());
        }
        Tamper tab = Tamper::table(p.n, images);
        suite.tuples = {{{tab, tab}}, {{tab, Tamper::identity(p.n)}}};
    } else {
        suite = make_suite(ta.suite, p.n, ta.t, ta.tuples, suite_rng);
    }
    BitString s1 = msg_rng.bits(p.out_bits()), s2 = msg_rng.bits(p.out_bits());
    std::string text = input_text(cfg.in);
    if (!text.empty()) s1 = parse_hex(text, p.out_bits(), "message");
    if (s1 == s2) s2.flip(0);

    ExperimentOptions opt;
    opt.trials = cfg.trials ? cfg.trials : 1000;
    opt.workers = cfg.workers;
    opt.seed = root.split(2).next();
    opt.coarse_bits = ta.coarse;
    auto results = nm_test(s1, s2, suite.tuples, cfg.threshold, sampler, opt);
    std::vector<double> ext_sd;
    if (ta.extractor) ext_sd = extractor_sd(suite.tuples, ext, opt);

    json rows = json::array();
    std::string failing;
    for (std::size_t k = 0; k < results.size(); ++k) {
        json names = json::array();
        bool fixed = false;
        for (const auto& pr : suite.tuples[k]) {
            names.push_back(pr.name());
            fixed = fixed || pr.has_fixed_point();
        }
        json row{{"tuple", k},
                 {"tampers", names},
                 {"has_fixed_point", fixed},
                 {"masked_sd", results[k].sd},
                 {"pass", results[k].pass}};
        if (ta.extractor) {
            row["extractor_sd"] = ext_sd[k];
            row["pass"] = results[k].pass && ext_sd[k] <= cfg.threshold;
        }
        if (!row["pass"].get<bool>() && failing.empty()) failing = "tuple " + std::to_string(k);
        rows.push_back(row);
    }
    emit(cfg, {{"suite", suite.name},
               {"trials", opt.trials},
               {"threshold", cfg.threshold},
               {"coarse_bits", ta.coarse},
               {"messages", {s1.to_hex(), s2.to_hex()}},
               {"results", rows},
               {"pass", failing.empty()}});
    if (!failing.empty()) throw VerifyFailure("tamper-test exceeds the threshold at " + failing);
    return ok;
}

int cmd_verify(const Config& cfg) {
    auto p = invertible(cfg);
    cli::VerifyOptions opt{cfg.seed, cfg.trials ? cfg.trials : 100, cfg.workers};
    json rep = cli::run_verify(p, opt);
    std::string text = rep.dump(2) + "\n";
    if (!cfg.report.empty()) write_file(cfg.report, text);
    emit(cfg, rep);
    for (const auto& s : rep["suites"])
        if (!s["pass"].get<bool>()) throw VerifyFailure("invariant failed: " + s["name"].get<std::string>());
    return ok;
}

// Checksums go to the result so it stays reproducible; wall-clock timings go to stderr.
int cmd_bench(const Config& cfg) {
    auto p = invertible(cfg);
    InvertibleExtractor ext(p);
    PreimageSampler sampler(ext);
    const uint64_t iters = cfg.trials ? cfg.trials : 20;
    Rng rng(cfg.seed);
    json rows = json::array();
    auto run = [&](const std::string& name, std::size_t in_bits, auto&& body) {
        uint64_t sum = 0;
        auto t0 = std::chrono::steady_clock::now();
        for (uint64_t i = 0; i < iters; ++i) sum = sum * 0x100000001b3ULL ^ body().hash();
        double us = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count() / iters;
        std::cerr << name << ": " << us << " us/op\n";
        std::ostringstream hs;
        hs << std::hex << sum;
        rows.push_back({{"op", name}, {"input_bits", in_bits}, {"iterations", iters}, {"checksum", hs.str()}});
    };
    IPSpec ip{4096, 16};
    BitString a = rng.bits(ip.n), b = rng.bits(ip.n);
    run("ip_extract", ip.n, [&] {
        a.flip(0);
        return ip_extract(a, b, ip);
    });
    IExt ie(IExtSpec{p.n_x, p.d2, 0});
    BitString xs = rng.bits(p.n_x);
    run("iext", p.n_x, [&] { return ie.apply(xs ^ rng.bits(p.n_x), rng.bits(p.d2)); });
    run("inmext", 2 * p.n, [&] { return ext.evaluate(rng.bits(p.n), rng.bits(p.n)); });
    BitString target = rng.bits(p.out_bits());
    run("sample_preimage", p.out_bits(), [&] {
        auto [x, y] = sampler.sample_preimage(target, rng);
        return x ^ y;
    });
    emit(cfg, {{"bench", rows}});
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nmc: non-malleable extraction and split-state coding toolkit"};
    app.require_subcommand(1);
    Config cfg;

    auto common = [&](CLI::App* sc) {
        sc->add_option("--params", cfg.params, "schedule JSON file");
        sc->add_option("--seed", cfg.seed, "64-bit rng seed");
        sc->add_option("--out", cfg.out, "write the result here instead of stdout");
        sc->add_option("--workers", cfg.workers, "worker threads")->check(CLI::Range(1u, 256u));
    };

    auto* params = app.add_subcommand("params", "validate and print a schedule");
    common(params);
    std::string check_file;
    params->add_option("--check", check_file, "schedule to validate");
    params->add_option("file", check_file, "schedule to validate");

    auto* extract = app.add_subcommand("extract", "evaluate an extractor on hex sources");
    common(extract);
    std::string alg = "inmext";
    extract->add_option("--alg", alg)->check(CLI::IsMember({"inmext", "nmext", "snmext"}));
    extract->add_option("--in", cfg.in, "JSON {left, right} literal or file; random sources when absent");

    auto* encode = app.add_subcommand("encode", "encode a message");
    common(encode);
    uint64_t count = 1;
    encode->add_option("--in", cfg.in, "message hex or file; random when absent");
    encode->add_option("--count", count, "independent encodings")->check(CLI::PositiveNumber);

    auto* decode = app.add_subcommand("decode", "decode a codeword");
    common(decode);
    decode->add_option("--in", cfg.in, "JSON {left, right} literal or file")->required();

    auto* preimage = app.add_subcommand("preimage", "sample uniform preimages of an output");
    common(preimage);
    std::string target;
    uint64_t samples = 1;
    bool census = false;
    preimage->add_option("--output", target, "target output hex");
    preimage->add_option("--in", cfg.in, "target output hex or file");
    preimage->add_option("--samples", samples)->check(CLI::PositiveNumber);
    preimage->add_flag("--count", census, "print the fiber census instead of sampling");

    auto* tamper = app.add_subcommand("tamper-test", "masked-SD tamper experiment");
    common(tamper);
    TamperArgs ta;
    tamper->add_option("--suite", ta.suite)->check(CLI::IsMember([] {
        auto v = suite_names();
        v.push_back("table");
        return v;
    }()));
    tamper->add_option("--trials", cfg.trials);
    tamper->add_option("--threshold", cfg.threshold);
    tamper->add_option("--tuples", ta.tuples)->check(CLI::PositiveNumber);
    tamper->add_option("--t", ta.t, "tampers per tuple")->check(CLI::PositiveNumber);
    tamper->add_option("--coarse", ta.coarse, "leading output bits per label (0 keeps full values)");
    tamper->add_option("--table", ta.table, "hex-per-line table acting on the leading bits of each side");
    tamper->add_option("--in", cfg.in, "first message hex or file");
    tamper->add_flag("--extractor", ta.extractor, "also measure extractor-level SD on uniform sources");

    auto* verify = app.add_subcommand("verify", "run the invariant suites");
    common(verify);
    verify->add_option("--trials", cfg.trials);
    verify->add_option("--report", cfg.report, "also write the JSON report here");

    auto* bench = app.add_subcommand("bench", "throughput of the core operations");
    common(bench);
    bench->add_option("--trials", cfg.trials, "iterations per operation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? ok : invalid;
    }

    try {
        if (*params) {
            if (cfg.params.empty()) cfg.params = check_file;
            return cmd_params(cfg);
        }
        if (*extract) return cmd_extract(cfg, alg);
        if (*encode) return cmd_encode(cfg, count);
        if (*decode) return cmd_decode(cfg);
        if (*preimage) return cmd_preimage(cfg, target, samples, census);
        if (*tamper) return cmd_tamper(cfg, ta);
        if (*verify) return cmd_verify(cfg);
        if (*bench) return cmd_bench(cfg);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return io_error;
    } catch (const VerifyFailure& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return verify_failed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return invalid;
    }
    return invalid;
}
