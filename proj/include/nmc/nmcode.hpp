#pragma once

#include "nmc/preimage.hpp"
#include "nmc/stats.hpp"

#include <string>
#include <utility>
#include <vector>

namespace nmc {

struct Codeword {
    BitString left, right;
    bool operator==(const Codeword&) const = default;
};

// Uniform member of the decoder's fiber over s.
Codeword enc(const BitString& s, const PreimageSampler& sampler, Rng& rng);
BitString dec(const Codeword& c, const InvertibleExtractor& ext);

// Either a concrete value or the token same*.
struct SimValue {
    bool same = false;
    BitString value;

    static SimValue same_star() { return {true, {}}; }
    static SimValue of(BitString v) { return {false, std::move(v)}; }
    bool operator==(const SimValue&) const = default;
};

BitString copy_val(const SimValue& x, const BitString& y);
std::vector<BitString> copy_t(const std::vector<SimValue>& xs, const std::vector<BitString>& ys);
std::vector<BitString> replace_vals(const std::vector<SimValue>& ds, const BitString& s);

// One side of a split-state tampering function.
class Tamper {
public:
    enum class Kind { identity, flip, constant, permutation, affine, table };

    // Output bit `target` becomes in[target] ^ (xor of in[support]) ^ constant; unlisted bits pass through.
    struct AffineRow {
        std::size_t target = 0;
        std::vector<std::size_t> support;
        bool constant = false;
        bool operator==(const AffineRow&) const = default;
    };

    static Tamper identity(std::size_t n);
    static Tamper flip(BitString mask);
    static Tamper constant(BitString value);
    // out[dst] = in[src] for each listed move; the moves must form a permutation of their coordinates.
    static Tamper permutation(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> moves);
    static Tamper affine(std::size_t n, std::vector<AffineRow> rows);
    // Lookup table on the leading w bits, 2^w = images.size() and w <= 24; entry v is the image of the
    // w-bit value v. The remaining n - w bits pass through.
    static Tamper table(std::size_t n, std::vector<uint64_t> images);

    Kind kind() const { return kind_; }
    std::size_t n() const { return n_; }
    std::string name() const;

    BitString apply(const BitString& x) const;
    // Exhaustive for tables, analytic for the parametric families.
    bool has_fixed_points() const;

    bool operator==(const Tamper&) const = default;

private:
    Kind kind_ = Kind::identity;
    std::size_t n_ = 0;
    BitString bits_;  // flip mask or constant
    std::vector<std::pair<std::size_t, std::size_t>> moves_;
    std::vector<AffineRow> rows_;
    std::vector<uint64_t> table_;
    unsigned width_ = 0;
};

// One hex image per line in input order; width 0 infers it from the line count.
std::vector<uint64_t> load_tamper_table(const std::string& path, std::size_t width = 0);

struct TamperPair {
    Tamper f, g;
    // A fixed point of the pair needs fixed points on both sides.
    bool has_fixed_point() const { return f.has_fixed_points() && g.has_fixed_points(); }
    bool is_constant() const { return f.kind() == Tamper::Kind::constant && g.kind() == Tamper::Kind::constant; }
    std::string name() const { return "(" + f.name() + ", " + g.name() + ")"; }
    bool operator==(const TamperPair&) const = default;
};
using TamperTuple = std::vector<TamperPair>;

struct TamperSuite {
    std::string name;
    std::vector<TamperTuple> tuples;
};

std::vector<std::string> suite_names();
TamperSuite make_suite(const std::string& name, std::size_t n, std::size_t t, std::size_t count, Rng& rng);

struct ExperimentOptions {
    uint64_t trials = 1000;
    unsigned workers = 1;
    uint64_t seed = 0;
    unsigned coarse_bits = 0;  // 0 keeps full values; otherwise only the leading bits label an outcome
    uint64_t chunk = 4096;
};

// Joint law of the t tampered decodings; values equal to s are masked as "*".
std::vector<Tally> tamper_experiment(const BitString& s, const std::vector<TamperTuple>& tuples,
                                     const PreimageSampler& sampler, const ExperimentOptions& opt, bool mask = true);

struct NmTestResult {
    double sd = 0;
    bool pass = false;
    Tally first, second;
};

std::vector<NmTestResult> nm_test(const BitString& s1, const BitString& s2, const std::vector<TamperTuple>& tuples,
                                  double eps, const PreimageSampler& sampler, const ExperimentOptions& opt);

// SD((out, tampered outs), (U, tampered outs)) on uniform sources, all values cut to coarse_bits.
std::vector<double> extractor_sd(const std::vector<TamperTuple>& tuples, const InvertibleExtractor& ext,
                                 const ExperimentOptions& opt);

}  // namespace nmc
