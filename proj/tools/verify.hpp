#pragma once

#include "nmc/params.hpp"

#include <json.hpp>

#include <cstdint>

namespace nmc::cli {

struct VerifyOptions {
    uint64_t seed = 0;
    uint64_t trials = 100;
    unsigned workers = 1;
};

// Every suite reports {"name", "pass", "measured"}; the top-level "pass" is their conjunction.
nlohmann::json run_verify(const InvertibleParams& p, const VerifyOptions& opt);

}  // namespace nmc::cli
