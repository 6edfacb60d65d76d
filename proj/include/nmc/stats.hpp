#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace nmc {

using Rational = boost::multiprecision::cpp_rational;

// Outcome counts keyed by an opaque outcome label; merging is associative.
struct Tally {
    std::map<std::string, uint64_t> counts;
    uint64_t total = 0;

    void add(const std::string& key, uint64_t c = 1);
    void merge(const Tally& o);
    bool operator==(const Tally&) const = default;
};

template <class W>
struct BasicDist {
    uint64_t domain_size = 0;  // outcomes absent from `weights` have weight zero
    std::map<std::string, W> weights;
};
using ExactDist = BasicDist<Rational>;
using FloatDist = BasicDist<double>;

ExactDist exact_dist(const Tally& t, uint64_t domain_size);
FloatDist float_dist(const Tally& t, uint64_t domain_size);
ExactDist uniform_exact(uint64_t domain_size, unsigned key_bits);

// Throws if the distribution is not normalized (exactly, or within 2^-40).
void check_dist(const ExactDist& d);
void check_dist(const FloatDist& d);

Rational stat_dist(const ExactDist& a, const ExactDist& b);
double stat_dist(const FloatDist& a, const FloatDist& b);

double min_entropy(const ExactDist& d);
double min_entropy(const FloatDist& d);

// Full enumeration of fn over {0,1}^input_bits (input_bits <= 24); keys are fn's labels.
ExactDist exhaustive_joint(const std::function<std::string(uint64_t)>& fn, unsigned input_bits,
                           uint64_t domain_size);

// Upper-tail p-value of the chi-square statistic against the uniform law on counts.size() cells.
double chi_square_uniform(const std::vector<uint64_t>& counts);
// Same against arbitrary cell probabilities.
double chi_square(const std::vector<uint64_t>& counts, const std::vector<double>& probs);

double to_double(const Rational& r);
std::string to_string(const Rational& r);

}  // namespace nmc
