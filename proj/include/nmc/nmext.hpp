#pragma once

#include "nmc/altext.hpp"
#include "nmc/bits.hpp"
#include "nmc/field.hpp"
#include "nmc/params.hpp"

#include <memory>
#include <vector>

namespace nmc {

struct ZTag {
    BitString z;
    BitString v;                 // sampler input
    std::vector<std::size_t> T;  // sampled codeword positions, 1-based
    bool operator==(const ZTag&) const = default;
};

// z = x1 . RS(x2)_T . y1 . RS(y2)_T with T = Samp(IP(x1, y1)).
struct TagLayout {
    std::size_t n = 0, n1 = 0, n3 = 0, samples = 0;
    const RSCode* code = nullptr;
    std::size_t z_bits() const { return 2 * (n1 + samples * code->b()); }
};
ZTag derive_tag(const BitString& x, const BitString& y, const TagLayout& layout);

// Seedless extractor of the alternating-extraction construction.
class SeedlessExtractor {
public:
    explicit SeedlessExtractor(const SeedlessParams& p);

    const SeedlessParams& params() const { return p_; }
    const TwoLaSpecs& specs() const { return specs_; }

    ZTag derive_z(const BitString& x, const BitString& y) const;
    BitString nmext1(const BitString& x, const BitString& y, const BitString& z,
                     std::vector<TwoLaTrace>* traces = nullptr) const;
    BitString evaluate(const BitString& x, const BitString& y) const;

private:
    SeedlessParams p_;
    std::unique_ptr<RSCode> code_;
    TwoLaSpecs specs_;
};

class SeededExtractor {
public:
    explicit SeededExtractor(const SeededParams& p);

    const SeededParams& params() const { return p_; }
    ZTag derive_z(const BitString& x, const BitString& y) const;
    BitString nmext1(const BitString& x, const BitString& y, const BitString& z) const;
    BitString evaluate(const BitString& x, const BitString& y) const;

private:
    SeededParams p_;
    std::unique_ptr<RSCode> code_;
    TwoLaSpecs specs_;
};

struct InmextTrace {
    ZTag z;
    BitString q1;
    std::vector<StepRecord> steps;
};

// Invertible extractor; refuses schedules that fail validate().
class InvertibleExtractor {
public:
    explicit InvertibleExtractor(const InvertibleParams& p);

    const InvertibleParams& params() const { return p_; }
    const IlaExt& ila() const { return *ila_; }
    const RSCode& code() const { return *code_; }
    const TagLayout& layout() const { return layout_; }

    ZTag derive_z(const BitString& x, const BitString& y) const;
    BitString evaluate(const BitString& x, const BitString& y, InmextTrace* trace = nullptr) const;
    // The alternating part given z; reads only x3, y3 and the consumed blocks.
    BitString evaluate1(const BitString& x, const BitString& y, const BitString& z, InmextTrace* trace = nullptr) const;
    BitString ip2(const BitString& x, const BitString& y) const;

    std::size_t x3_pos() const { return p_.n1; }
    std::size_t w_pos(std::size_t i) const { return p_.n1 + p_.n6 + (i - 1) * p_.n_x; }  // 1-based block index
    std::size_t v_pos(std::size_t i) const { return p_.n1 + p_.n6 + (i - 1) * p_.n_y; }
    std::size_t free_pos() const { return w_pos(4 * p_.ell + 1); }  // same offset on both sides
    std::vector<std::size_t> sample_positions(const BitString& v) const;

private:
    InvertibleParams p_;
    std::unique_ptr<RSCode> code_;
    std::unique_ptr<IlaExt> ila_;
    TagLayout layout_;
    const Field* ip2_field_ = nullptr;  // null selects GF(2^128)
};

BitString inmext(const BitString& x, const BitString& y, const InvertibleExtractor& ext);
BitString nmext(const BitString& x, const BitString& y, const SeedlessExtractor& ext);
BitString snmext(const BitString& x, const BitString& y_seed, const SeededExtractor& ext);

std::string describe(const std::vector<Violation>& v);

}  // namespace nmc
