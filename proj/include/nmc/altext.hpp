#pragma once

#include "nmc/bits.hpp"
#include "nmc/extractors.hpp"
#include "nmc/params.hpp"

#include <array>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace nmc {

struct AltExtParams {
    std::size_t u = 2;
    std::size_t m = 0;
    ToeplitzRole ext_q;  // n_q -> m
    ToeplitzRole ext_w;  // n_w -> m
};

struct Transcript {
    std::vector<BitString> S;
    std::vector<BitString> R;
};

// Returns R_1..R_u together with the full transcript.
std::pair<std::vector<BitString>, Transcript> la_ext(const BitString& x, const BitString& q, const BitString& s1,
                                                     const AltExtParams& p);

struct TwoLaSpecs {
    std::size_t n_q = 0;
    std::size_t m = 0;
    ToeplitzRole ext_q;  // n_q -> m
    ToeplitzRole ext_w;  // |x| -> m
    ToeplitzRole ext;    // |y| -> n_q, seeded by m bits
};

struct TwoLaTrace {
    // (role, source) per extractor call, in order; identical for both branch bits.
    std::vector<std::pair<std::string, std::string>> calls;
    BitString r1, r2, qbar, rbar1, rbar2;
};

BitString two_la_ext(const BitString& x, const BitString& y, const BitString& q, bool b, const TwoLaSpecs& specs,
                     TwoLaTrace* trace = nullptr);

struct IlaExtStepParams {
    std::size_t n_q = 0, n_x = 0, n_y = 0;
    std::size_t d1 = 0, d2 = 0, d3 = 0, d4 = 0, d5 = 0;
    std::size_t half_blocks = 0;  // 4Ct
    std::array<std::size_t, 4> samp_bits{};

    static IlaExtStepParams from(const InvertibleParams& p);
    std::string problem() const;
};

// Seeds and outputs of one 2ilaExt step; all widths are at most 64 bits.
struct StepRecord {
    uint64_t s1 = 0, r1 = 0, s2 = 0, r2 = 0;
    uint64_t sb1 = 0, rb1 = 0, sb2 = 0, rb2 = 0;
    uint64_t r_sel = 0, rb_sel = 0;
    BitString qbar;
    bool operator==(const StepRecord&) const = default;
};

class IlaExt {
public:
    explicit IlaExt(const IlaExtStepParams& p);

    const IlaExtStepParams& params() const { return p_; }
    // j in 1..4
    const IExt& ext(int j) const { return *exts_[j - 1]; }

    // q holds q_{h,1} followed by q_{h,2}; the x-blocks start at `wpos`, the 8Ct y-blocks at `vpos`.
    BitString step(const BitString& x, std::size_t wpos, const BitString& y, std::size_t vpos, const BitString& q,
                   bool b, StepRecord* rec = nullptr) const;
    BitString block_ext(const BitString& y, std::size_t pos, uint64_t seed) const;
    // Uniform y-window of 4Ct blocks with block_ext(y, pos, seed) = target.
    void sample_window(BitString& y, std::size_t pos, uint64_t seed, const BitString& target, Rng& rng) const;

    uint64_t slice_d4(uint64_t r1) const { return r1 >> (p_.d2 - p_.d4); }

private:
    IlaExtStepParams p_;
    std::array<std::unique_ptr<IExt>, 4> exts_;
    // Per seed, byte-indexed tables of the (linear) block map; empty when blocks are too wide.
    std::size_t block_bytes_ = 0;
    std::vector<uint64_t> tables_;
};

std::pair<BitString, BitString> two_ila_ext(const std::vector<BitString>& v_blocks,
                                            const std::vector<BitString>& w_blocks, const BitString& q_h1,
                                            const BitString& q_h2, std::size_t h, bool b, const IlaExt& ila);
std::pair<BitString, BitString> block_ext(const std::vector<BitString>& v_blocks, const BitString& seed,
                                          const IlaExt& ila);

}  // namespace nmc
