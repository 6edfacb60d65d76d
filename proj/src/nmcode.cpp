#include "nmc/nmcode.hpp"

#include "nmc/parallel.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace nmc {

Codeword enc(const BitString& s, const PreimageSampler& sampler, Rng& rng) {
    if (s.size() != sampler.extractor().params().out_bits()) throw std::length_error("enc: message width mismatch");
    auto [x, y] = sampler.sample_preimage(s, rng);
    return {std::move(x), std::move(y)};
}

BitString dec(const Codeword& c, const InvertibleExtractor& ext) { return ext.evaluate(c.left, c.right); }

BitString copy_val(const SimValue& x, const BitString& y) { return x.same ? y : x.value; }

std::vector<BitString> copy_t(const std::vector<SimValue>& xs, const std::vector<BitString>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("copy_t: arity mismatch");
    std::vector<BitString> out;
    for (std::size_t i = 0; i < xs.size(); ++i) out.push_back(copy_val(xs[i], ys[i]));
    return out;
}

std::vector<BitString> replace_vals(const std::vector<SimValue>& ds, const BitString& s) {
    return copy_t(ds, std::vector<BitString>(ds.size(), s));
}

Tamper Tamper::identity(std::size_t n) {
    Tamper t;
    t.n_ = n;
    return t;
}

Tamper Tamper::flip(BitString mask) {
    Tamper t;
    t.kind_ = Kind::flip;
    t.n_ = mask.size();
    t.bits_ = std::move(mask);
    return t;
}

Tamper Tamper::constant(BitString value) {
    Tamper t;
    t.kind_ = Kind::constant;
    t.n_ = value.size();
    t.bits_ = std::move(value);
    return t;
}

Tamper Tamper::permutation(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> moves) {
    std::set<std::size_t> dst, src;
    for (auto [d, s] : moves) {
        if (d >= n || s >= n) throw std::out_of_range("permutation move outside the string");
        dst.insert(d);
        src.insert(s);
    }
    if (dst.size() != moves.size() || dst != src) throw std::invalid_argument("moves do not form a permutation");
    Tamper t;
    t.kind_ = Kind::permutation;
    t.n_ = n;
    t.moves_ = std::move(moves);
    return t;
}

Tamper Tamper::affine(std::size_t n, std::vector<AffineRow> rows) {
    std::set<std::size_t> targets;
    for (const auto& r : rows) {
        if (r.target >= n) throw std::out_of_range("affine row target outside the string");
        for (auto j : r.support)
            if (j >= n) throw std::out_of_range("affine support outside the string");
        if (!targets.insert(r.target).second) throw std::invalid_argument("affine rows must have distinct targets");
    }
    Tamper t;
    t.kind_ = Kind::affine;
    t.n_ = n;
    t.rows_ = std::move(rows);
    return t;
}

Tamper Tamper::table(std::size_t n, std::vector<uint64_t> images) {
    unsigned w = 0;
    while (w <= 24 && (std::size_t{1} << w) < images.size()) ++w;
    if (w > 24 || (std::size_t{1} << w) != images.size())
        throw std::invalid_argument("table must list 2^w images with w <= 24");
    if (w > n) throw std::invalid_argument("table is wider than the string");
    for (auto v : images)
        if (v >> w) throw std::invalid_argument("table image wider than its input");
    Tamper t;
    t.kind_ = Kind::table;
    t.n_ = n;
    t.width_ = w;
    t.table_ = std::move(images);
    return t;
}

std::string Tamper::name() const {
    switch (kind_) {
        case Kind::identity: return "id";
        case Kind::flip: return "flip[w=" + std::to_string(bits_.popcount()) + "]";
        case Kind::constant: return "const";
        case Kind::permutation: return "perm[k=" + std::to_string(moves_.size()) + "]";
        case Kind::affine: return "affine[r=" + std::to_string(rows_.size()) + "]";
        case Kind::table: return "table[w=" + std::to_string(width_) + "]";
    }
    return "?";
}

BitString Tamper::apply(const BitString& x) const {
    if (x.size() != n_) throw std::length_error("tamper input width mismatch");
    switch (kind_) {
        case Kind::identity: return x;
        case Kind::flip: return x ^ bits_;
        case Kind::constant: return bits_;
        case Kind::permutation: {
            BitString out = x;
            for (auto [d, s] : moves_) out.set(d, x.get(s));
            return out;
        }
        case Kind::affine: {
            BitString out = x;
            for (const auto& r : rows_) {
                bool v = x.get(r.target) != r.constant;
                for (auto j : r.support) v ^= x.get(j);
                out.set(r.target, v);
            }
            return out;
        }
        case Kind::table: {
            BitString out = x;
            if (width_) out.set_bits(0, width_, table_[x.get_bits(0, width_)]);
            return out;
        }
    }
    return x;
}

bool Tamper::has_fixed_points() const {
    switch (kind_) {
        case Kind::identity: return true;
        case Kind::flip: return bits_.is_zero();
        case Kind::constant: return true;
        case Kind::permutation: return true;  // the all-zero string
        case Kind::affine: {
            // Fixed iff every listed row has xor over its support equal to its constant.
            std::map<std::size_t, std::size_t> var;
            for (const auto& r : rows_)
                for (auto j : r.support) var.emplace(j, var.size());
            GF2Matrix A(rows_.size(), var.size());
            BitString rhs(rows_.size());
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                for (auto j : rows_[i].support) A.set(i, var[j], !A.get(i, var[j]));
                rhs.set(i, rows_[i].constant);
            }
            return std::holds_alternative<AffineSubspace>(solve_affine(A, rhs));
        }
        case Kind::table:
            for (uint64_t v = 0; v < table_.size(); ++v)
                if (table_[v] == v) return true;
            return false;
    }
    return true;
}

std::vector<uint64_t> load_tamper_table(const std::string& path, std::size_t width) {
    if (width > 24) throw std::invalid_argument("table tampers are limited to 24-bit inputs");
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open tamper table " + path);
    std::vector<uint64_t> out;
    std::string line;
    while (std::getline(in, line)) {
        line.erase(std::remove_if(line.begin(), line.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
                   line.end());
        if (line.empty()) continue;
        std::size_t used = 0;
        uint64_t v = std::stoull(line, &used, 16);
        if (used != line.size()) throw std::invalid_argument("tamper table line is not hex: " + line);
        out.push_back(v);
    }
    if (width == 0)
        while (width < 24 && (std::size_t{1} << width) < out.size()) ++width;
    if (out.size() != (std::size_t{1} << width)) throw std::invalid_argument("tamper table must have 2^width lines");
    return out;
}

namespace {

BitString random_mask(std::size_t n, std::size_t weight, Rng& rng) {
    BitString m(n);
    while (m.popcount() < weight) m.set(rng.below(n), true);
    return m;
}

Tamper random_flip(std::size_t n, Rng& rng) { return Tamper::flip(random_mask(n, 1 + rng.below(8), rng)); }

Tamper random_affine(std::size_t n, Rng& rng) {
    std::vector<Tamper::AffineRow> rows;
    std::set<std::size_t> used;
    while (rows.size() < 8) {
        std::size_t t = rng.below(n);
        if (!used.insert(t).second) continue;
        Tamper::AffineRow r{t, {}, rng.bit()};
        std::size_t k = 1 + rng.below(3);
        while (r.support.size() < k) {
            std::size_t j = rng.below(n);
            if (j != t && std::find(r.support.begin(), r.support.end(), j) == r.support.end()) r.support.push_back(j);
        }
        rows.push_back(std::move(r));
    }
    return Tamper::affine(n, std::move(rows));
}

Tamper random_swaps(std::size_t n, Rng& rng) {
    std::vector<std::pair<std::size_t, std::size_t>> moves;
    std::set<std::size_t> used;
    while (moves.size() < 8) {
        std::size_t a = rng.below(n), b = rng.below(n);
        if (a == b || used.count(a) || used.count(b)) continue;
        used.insert(a);
        used.insert(b);
        moves.emplace_back(a, b);
        moves.emplace_back(b, a);
    }
    return Tamper::permutation(n, std::move(moves));
}

Tamper xor_copy(std::size_t n, Rng& rng) {
    const std::size_t len = 16, shift = 1 + rng.below(n / 2);
    std::size_t start = rng.below(n - len - shift);
    std::vector<Tamper::AffineRow> rows;
    for (std::size_t i = 0; i < len; ++i) rows.push_back({start + i, {start + i + shift}, false});
    return Tamper::affine(n, std::move(rows));
}

TamperPair random_pair(const std::string& family, std::size_t n, Rng& rng) {
    if (family == "identity") return {Tamper::identity(n), Tamper::identity(n)};
    if (family == "constant") return {Tamper::constant(rng.bits(n)), Tamper::constant(rng.bits(n))};
    if (family == "bitflip") {
        Tamper f = random_flip(n, rng);
        return {f, random_flip(n, rng)};
    }
    if (family == "affine") {
        Tamper f = random_affine(n, rng);
        return {f, random_affine(n, rng)};
    }
    if (family == "permutation") {
        Tamper f = random_swaps(n, rng);
        return {f, random_swaps(n, rng)};
    }
    if (family == "onesided") return {random_flip(n, rng), Tamper::identity(n)};
    if (family == "xorcopy") {
        Tamper f = xor_copy(n, rng);
        return {f, xor_copy(n, rng)};
    }
    throw std::invalid_argument("unknown tamper family: " + family);
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"identity", "constant", "bitflip", "affine", "permutation", "onesided", "xorcopy", "mixed"};
}

TamperSuite make_suite(const std::string& name, std::size_t n, std::size_t t, std::size_t count, Rng& rng) {
    static const char* cycle[] = {"bitflip", "constant", "affine"};
    TamperSuite suite{name, {}};
    for (std::size_t c = 0; c < count; ++c) {
        TamperTuple tuple;
        for (std::size_t i = 0; i < t; ++i)
            tuple.push_back(random_pair(name == "mixed" ? cycle[(c + i) % 3] : name, n, rng));
        suite.tuples.push_back(std::move(tuple));
    }
    return suite;
}

namespace {

// Distinct pairs across all tuples, and each tuple slot's index into them.
struct PairIndex {
    std::vector<const TamperPair*> pairs;
    std::vector<std::vector<std::size_t>> slots;

    explicit PairIndex(const std::vector<TamperTuple>& tuples, std::size_t n) {
        for (const auto& tuple : tuples) {
            std::vector<std::size_t> s;
            for (const auto& p : tuple) {
                if (p.f.n() != n || p.g.n() != n) throw std::length_error("tamper width does not match the code");
                auto it = std::find_if(pairs.begin(), pairs.end(), [&](const TamperPair* q) { return *q == p; });
                if (it == pairs.end()) {
                    s.push_back(pairs.size());
                    pairs.push_back(&p);
                } else {
                    s.push_back(static_cast<std::size_t>(it - pairs.begin()));
                }
            }
            slots.push_back(std::move(s));
        }
    }
};

std::string coarse_label(const BitString& v, unsigned coarse) {
    return coarse ? v.sub(0, std::min<std::size_t>(coarse, v.size())).to_bits() : v.to_hex();
}

std::string join(const std::vector<std::string>& lab, const std::vector<std::size_t>& idx) {
    std::string key;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) key += ',';
        key += lab[idx[i]];
    }
    return key;
}

void merge_tallies(std::vector<Tally>& acc, const std::vector<Tally>& part) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i].merge(part[i]);
}

std::vector<Tally> run_experiment(const BitString& s, const std::vector<TamperTuple>& tuples,
                                  const PreimageSampler& sampler, const ExperimentOptions& opt, bool mask,
                                  const Rng& base) {
    const InvertibleExtractor& ext = sampler.extractor();
    const std::size_t n = ext.params().n;
    PairIndex index(tuples, n);
    std::vector<std::optional<BitString>> fixed(index.pairs.size());
    for (std::size_t u = 0; u < index.pairs.size(); ++u)
        if (index.pairs[u]->is_constant())
            fixed[u] = dec({index.pairs[u]->f.apply(BitString(n)), index.pairs[u]->g.apply(BitString(n))}, ext);
    auto label = [&](const BitString& v) { return mask && v == s ? std::string("*") : coarse_label(v, opt.coarse_bits); };

    using Acc = std::vector<Tally>;
    auto chunk = [&](uint64_t c, uint64_t begin, uint64_t end) {
        Rng rng = base.split(c);
        Acc out(tuples.size());
        std::vector<std::string> lab(index.pairs.size());
        for (uint64_t i = begin; i < end; ++i) {
            Codeword cw = enc(s, sampler, rng);
            for (std::size_t u = 0; u < index.pairs.size(); ++u) {
                const TamperPair& p = *index.pairs[u];
                lab[u] = label(fixed[u] ? *fixed[u] : dec({p.f.apply(cw.left), p.g.apply(cw.right)}, ext));
            }
            for (std::size_t k = 0; k < tuples.size(); ++k) out[k].add(join(lab, index.slots[k]));
        }
        return out;
    };
    return run_chunks<Acc>(opt.trials, opt.chunk, opt.workers, chunk, merge_tallies, Acc(tuples.size()));
}

}  // namespace

std::vector<Tally> tamper_experiment(const BitString& s, const std::vector<TamperTuple>& tuples,
                                     const PreimageSampler& sampler, const ExperimentOptions& opt, bool mask) {
    return run_experiment(s, tuples, sampler, opt, mask, Rng(opt.seed));
}

std::vector<NmTestResult> nm_test(const BitString& s1, const BitString& s2, const std::vector<TamperTuple>& tuples,
                                  double eps, const PreimageSampler& sampler, const ExperimentOptions& opt) {
    if (s1 == s2) throw std::invalid_argument("nm_test needs two distinct messages");
    Rng root(opt.seed);
    auto a = run_experiment(s1, tuples, sampler, opt, true, root.split(1));
    auto b = run_experiment(s2, tuples, sampler, opt, true, root.split(2));
    std::vector<NmTestResult> out;
    for (std::size_t k = 0; k < tuples.size(); ++k) {
        // Both tallies live on the same label space; its size only needs to cover their union.
        uint64_t dom = a[k].counts.size() + b[k].counts.size();
        double sd = stat_dist(float_dist(a[k], dom), float_dist(b[k], dom));
        out.push_back({sd, sd <= eps, std::move(a[k]), std::move(b[k])});
    }
    return out;
}

std::vector<double> extractor_sd(const std::vector<TamperTuple>& tuples, const InvertibleExtractor& ext,
                                 const ExperimentOptions& opt) {
    if (opt.coarse_bits == 0 || opt.coarse_bits > 16) throw std::invalid_argument("extractor_sd needs 1..16 coarse bits");
    const std::size_t n = ext.params().n;
    PairIndex index(tuples, n);
    std::vector<std::optional<BitString>> fixed(index.pairs.size());
    for (std::size_t u = 0; u < index.pairs.size(); ++u)
        if (index.pairs[u]->is_constant())
            fixed[u] = ext.evaluate(index.pairs[u]->f.apply(BitString(n)), index.pairs[u]->g.apply(BitString(n)));

    // Per tuple: joint tally keyed "out|tampered" and marginal tally keyed "tampered".
    using Acc = std::vector<Tally>;
    const Rng base(opt.seed);
    auto chunk = [&](uint64_t c, uint64_t begin, uint64_t end) {
        Rng rng = base.split(c);
        Acc out(2 * tuples.size());
        std::vector<std::string> lab(index.pairs.size());
        for (uint64_t i = begin; i < end; ++i) {
            BitString x = rng.bits(n), y = rng.bits(n);
            std::string o = coarse_label(ext.evaluate(x, y), opt.coarse_bits);
            for (std::size_t u = 0; u < index.pairs.size(); ++u) {
                const TamperPair& p = *index.pairs[u];
                lab[u] = coarse_label(fixed[u] ? *fixed[u] : ext.evaluate(p.f.apply(x), p.g.apply(y)), opt.coarse_bits);
            }
            for (std::size_t k = 0; k < tuples.size(); ++k) {
                std::string tk = join(lab, index.slots[k]);
                out[2 * k].add(o + "|" + tk);
                out[2 * k + 1].add(tk);
            }
        }
        return out;
    };
    Acc all = run_chunks<Acc>(opt.trials, opt.chunk, opt.workers, chunk, merge_tallies, Acc(2 * tuples.size()));

    std::vector<double> sds;
    const double cells = std::ldexp(1.0, static_cast<int>(opt.coarse_bits));
    for (std::size_t k = 0; k < tuples.size(); ++k) {
        const Tally& joint = all[2 * k];
        const Tally& marg = all[2 * k + 1];
        const double N = static_cast<double>(joint.total);
        double sum = 0;
        for (const auto& [tk, mc] : marg.counts) {
            const double ideal = static_cast<double>(mc) / N / cells;
            for (uint64_t v = 0; v < static_cast<uint64_t>(cells); ++v) {
                std::string key = BitString::from_uint(v, opt.coarse_bits).to_bits() + "|" + tk;
                auto it = joint.counts.find(key);
                double p = it == joint.counts.end() ? 0.0 : static_cast<double>(it->second) / N;
                sum += std::fabs(p - ideal);
            }
        }
        sds.push_back(sum / 2);
    }
    return sds;
}

}  // namespace nmc
