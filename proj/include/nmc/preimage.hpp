#pragma once

#include "nmc/gf2.hpp"
#include "nmc/nmext.hpp"
#include "nmc/rng.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nmc {

struct StepSeeds {
    uint64_t s1 = 0, r1 = 0, s2 = 0, r2 = 0;
    uint64_t sb1 = 0, rb1 = 0, sb2 = 0, rb2 = 0;
    bool operator==(const StepSeeds&) const = default;
};

struct SeedTranscript {
    BitString z;
    std::vector<StepSeeds> steps;
    bool operator==(const SeedTranscript&) const = default;
};

SeedTranscript transcript_of(const InmextTrace& trace);

struct FiberComponent {
    std::string name;
    std::size_t dim = 0;
};

// Component dimensions of the fiber for one fixed (z, transcript, output).
struct FiberDescription {
    std::vector<FiberComponent> components;
    std::size_t transcript_bits = 0;  // |z| + all per-step seeds

    std::size_t conditional_log2() const;
    std::size_t total_log2() const { return conditional_log2() + transcript_bits; }
};

FiberDescription describe_fiber(const InvertibleParams& p);

// Materialized subspaces of one step for fixed seeds and fixed q-values.
struct StepFiber {
    std::vector<AffineSubspace> w;         // the four consumed x-blocks
    AffineSubspace qbar;                   // admissible intermediate values
    std::vector<AffineSubspace> a_blocks;  // first window, given qbar_value
    std::vector<AffineSubspace> b_blocks;  // second window, given q_next
    AffineSubspace q_in;                   // admissible step inputs q_h
    std::optional<AffineSubspace> y3;      // h = 1 only: given x3 and q1_value
};

struct StepFiberInputs {
    std::size_t h = 1;
    bool b = false;
    StepSeeds seeds;
    BitString qbar_value;
    BitString q_next;
    std::optional<BitString> x3;
    std::optional<BitString> q1_value;
};

StepFiber step_fiber(const InvertibleExtractor& ext, const StepFiberInputs& in);

class PreimageSampler {
public:
    explicit PreimageSampler(const InvertibleExtractor& ext);

    const InvertibleExtractor& extractor() const { return ext_; }

    SeedTranscript sample_transcript(Rng& rng) const;
    // Fills x3, y3 and the consumed blocks of (x, y) for a transcript and output.
    void samp_nm1(const SeedTranscript& tr, const BitString& output, BitString& x, BitString& y, Rng& rng) const;
    std::pair<BitString, BitString> samp_nm(const SeedTranscript& tr, const BitString& output, Rng& rng) const;
    std::pair<BitString, BitString> sample_preimage(const BitString& output, Rng& rng) const;

    // Factorized RS system for the free halves at sample set T.
    std::shared_ptr<const LinearSystem> rs_system(const std::vector<std::size_t>& T) const;

private:
    void solve_free_half(BitString& s, const BitString& target, const std::vector<std::size_t>& T,
                         Rng& rng) const;

    const InvertibleExtractor& ext_;
    std::size_t free_from_ = 0;  // symbols before the free half
    mutable std::mutex mu_;
    mutable std::map<std::vector<std::size_t>, std::shared_ptr<const LinearSystem>> rs_cache_;
};

std::pair<BitString, BitString> sample_preimage(const BitString& output, const PreimageSampler& sampler, Rng& rng);

}  // namespace nmc
