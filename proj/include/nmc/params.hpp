#pragma once

#include <json.hpp>

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace nmc {

struct Violation {
    std::string label;
    std::string message;
};

// Two-source schedule driving the alternating-extraction non-malleable extractor.
struct SeedlessParams {
    std::size_t n = 0;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    std::size_t n3 = 0;       // inner-product output = sampler randomness
    unsigned field_b = 16;
    std::size_t rs_len = 0;
    std::size_t samples = 0;  // sampled codeword symbols
    std::size_t ell = 0;
    std::size_t t = 0;
    std::size_t n_q = 0;
    std::size_t m = 0;
    std::size_t m_out = 0;
    std::size_t k = 0;
    std::size_t k1 = 0;
    std::size_t k_w = 0;
    std::size_t k_y = 0;
    std::size_t lambda = 0;
    std::size_t log_inv_eps = 0;

    std::size_t n4() const { return field_b ? n2 / field_b : 0; }
};

struct SeededParams {
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t k = 0;
    std::size_t t = 0;
    std::size_t n1 = 0;
    std::size_t samples = 0;
    unsigned field_b = 16;
    std::size_t rs_len = 0;
    std::size_t ell = 0;
    std::size_t n3 = 0;  // alternating-extraction q width
    std::size_t n4 = 0;  // exchanged message width
    std::size_t n5 = 0;  // output width
    std::size_t log_inv_eps = 0;
};

struct InvertibleParams {
    std::size_t n = 0;
    std::size_t n1 = 0, n2 = 0, n3 = 0, n4 = 0, n5 = 0, n6 = 0, n7 = 0;
    std::size_t n_q = 0, n_x = 0, n_y = 0;
    std::size_t d1 = 0, d2 = 0, d3 = 0, d4 = 0, d5 = 0;
    std::size_t ell = 0;
    std::size_t t = 0;
    std::size_t C = 0;
    unsigned field_b = 16;
    std::size_t rs_len = 0;
    std::array<std::size_t, 4> samp_bits{};  // sampler slice of iExt_1..iExt_4

    std::size_t x_blocks() const { return 8 * ell; }
    std::size_t y_blocks() const { return 16 * C * t * ell; }
    std::size_t window() const { return 4 * C * t; }  // v-blocks per half step
    std::size_t out_bits() const { return 2 * n_q; }
};

std::vector<Violation> validate(const SeedlessParams& p);
std::vector<Violation> validate(const SeededParams& p);
std::vector<Violation> validate(const InvertibleParams& p);

void to_json(nlohmann::json& j, const SeedlessParams& p);
void from_json(const nlohmann::json& j, SeedlessParams& p);
void to_json(nlohmann::json& j, const SeededParams& p);
void from_json(const nlohmann::json& j, SeededParams& p);
void to_json(nlohmann::json& j, const InvertibleParams& p);
void from_json(const nlohmann::json& j, InvertibleParams& p);

// A parameter file names its kind: "invertible", "seedless" or "seeded".
nlohmann::json load_json_file(const std::string& path);
InvertibleParams load_invertible(const std::string& path);

}  // namespace nmc
