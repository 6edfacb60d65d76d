#include "nmc/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nmc {

void Tally::add(const std::string& key, uint64_t c) {
    counts[key] += c;
    total += c;
}

void Tally::merge(const Tally& o) {
    for (const auto& [k, c] : o.counts) counts[k] += c;
    total += o.total;
}

ExactDist exact_dist(const Tally& t, uint64_t domain_size) {
    if (t.total == 0) throw std::invalid_argument("empty tally");
    if (t.counts.size() > domain_size) throw std::invalid_argument("tally has more outcomes than the domain");
    ExactDist d{domain_size, {}};
    for (const auto& [k, c] : t.counts)
        if (c) d.weights.emplace(k, Rational(c, t.total));
    return d;
}

FloatDist float_dist(const Tally& t, uint64_t domain_size) {
    if (t.total == 0) throw std::invalid_argument("empty tally");
    if (t.counts.size() > domain_size) throw std::invalid_argument("tally has more outcomes than the domain");
    FloatDist d{domain_size, {}};
    for (const auto& [k, c] : t.counts)
        if (c) d.weights.emplace(k, static_cast<double>(c) / static_cast<double>(t.total));
    return d;
}

ExactDist uniform_exact(uint64_t domain_size, unsigned key_bits) {
    if (key_bits > 24 || domain_size != (uint64_t{1} << key_bits))
        throw std::invalid_argument("uniform_exact: domain must be 2^key_bits with key_bits <= 24");
    ExactDist d{domain_size, {}};
    Rational w(1, domain_size);
    for (uint64_t v = 0; v < domain_size; ++v) {
        std::string k(key_bits, '0');
        for (unsigned i = 0; i < key_bits; ++i)
            if ((v >> (key_bits - 1 - i)) & 1) k[i] = '1';
        d.weights.emplace(std::move(k), w);
    }
    return d;
}

void check_dist(const ExactDist& d) {
    Rational sum = 0;
    for (const auto& [k, w] : d.weights) {
        if (w < 0) throw std::invalid_argument("negative weight");
        sum += w;
    }
    if (sum != 1) throw std::invalid_argument("weights do not sum to one");
}

void check_dist(const FloatDist& d) {
    double sum = 0;
    for (const auto& [k, w] : d.weights) {
        if (w < 0) throw std::invalid_argument("negative weight");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > std::ldexp(1.0, -40)) throw std::invalid_argument("weights do not sum to one");
}

namespace {

template <class W>
W half_l1(const BasicDist<W>& a, const BasicDist<W>& b) {
    if (a.domain_size != b.domain_size) throw std::invalid_argument("stat_dist: domain mismatch");
    W sum = 0;
    auto ia = a.weights.begin(), ib = b.weights.begin();
    while (ia != a.weights.end() || ib != b.weights.end()) {
        if (ib == b.weights.end() || (ia != a.weights.end() && ia->first < ib->first)) {
            sum += ia->second;
            ++ia;
        } else if (ia == a.weights.end() || ib->first < ia->first) {
            sum += ib->second;
            ++ib;
        } else {
            W diff = ia->second - ib->second;
            sum += diff < 0 ? W(-diff) : diff;
            ++ia;
            ++ib;
        }
    }
    return sum / 2;
}

}  // namespace

Rational stat_dist(const ExactDist& a, const ExactDist& b) { return half_l1(a, b); }
double stat_dist(const FloatDist& a, const FloatDist& b) { return half_l1(a, b); }

double min_entropy(const ExactDist& d) {
    Rational mx = 0;
    for (const auto& [k, w] : d.weights) mx = std::max(mx, w);
    if (mx == 0) throw std::invalid_argument("min_entropy of an empty distribution");
    return -std::log2(to_double(mx));
}

double min_entropy(const FloatDist& d) {
    double mx = 0;
    for (const auto& [k, w] : d.weights) mx = std::max(mx, w);
    if (mx == 0) throw std::invalid_argument("min_entropy of an empty distribution");
    return -std::log2(mx);
}

ExactDist exhaustive_joint(const std::function<std::string(uint64_t)>& fn, unsigned input_bits,
                           uint64_t domain_size) {
    if (input_bits > 24) throw std::invalid_argument("exhaustive_joint: domain too large, use Monte Carlo");
    Tally t;
    for (uint64_t v = 0; v < (uint64_t{1} << input_bits); ++v) t.add(fn(v));
    return exact_dist(t, domain_size);
}

double chi_square(const std::vector<uint64_t>& counts, const std::vector<double>& probs) {
    if (counts.size() != probs.size() || counts.size() < 2) throw std::invalid_argument("chi_square: bad cell count");
    double n = 0;
    for (auto c : counts) n += static_cast<double>(c);
    double stat = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        double e = n * probs[i];
        if (e <= 0) throw std::invalid_argument("chi_square: cell with zero expectation");
        double d = static_cast<double>(counts[i]) - e;
        stat += d * d / e;
    }
    double dof = static_cast<double>(counts.size() - 1);
    return boost::math::gamma_q(dof / 2, stat / 2);
}

double chi_square_uniform(const std::vector<uint64_t>& counts) {
    return chi_square(counts, std::vector<double>(counts.size(), 1.0 / static_cast<double>(counts.size())));
}

double to_double(const Rational& r) { return static_cast<double>(r); }

std::string to_string(const Rational& r) { return r.str(); }

}  // namespace nmc
