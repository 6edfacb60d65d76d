#pragma once

#include "nmc/bits.hpp"

#include <array>
#include <cstdint>
#include <limits>

namespace nmc {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256** seeded through SplitMix64. Satisfies UniformRandomBitGenerator.
class Rng {
public:
    using result_type = uint64_t;

    explicit Rng(uint64_t seed = 0) {
        uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<uint64_t>::max(); }

    result_type operator()() { return next(); }

    uint64_t next() {
        uint64_t result = rotl(s_[1] * 5, 7) * 9;
        uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Independent child stream; a pure function of the current state and `stream`.
    Rng split(uint64_t stream) const {
        uint64_t sm = s_[0] ^ rotl(s_[1], 13) ^ rotl(s_[2], 29) ^ rotl(s_[3], 47);
        sm ^= stream * 0xd1342543de82ef95ULL;
        Rng child(0);
        splitmix64(sm);
        for (auto& w : child.s_) w = splitmix64(sm);
        return child;
    }

    uint64_t below(uint64_t n) {
        if (n == 0) return 0;
        uint64_t limit = max() - max() % n;
        for (;;) {
            uint64_t v = next();
            if (v < limit) return v % n;
        }
    }

    bool bit() { return next() >> 63; }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    BitString bits(std::size_t n) {
        BitString out(n);
        fill(out);
        return out;
    }

    void fill(BitString& b) {
        std::size_t nw = b.word_count();
        uint64_t* w = b.words();
        for (std::size_t k = 0; k < nw; ++k) w[k] = next();
        unsigned r = b.size() & 63;
        if (r && nw) w[nw - 1] &= ~uint64_t{0} << (64 - r);
    }

    // Randomize bits [pos, pos+len) in place.
    void fill_range(BitString& b, std::size_t pos, std::size_t len) {
        while (len) {
            unsigned w = static_cast<unsigned>(len < 64 ? len : 64);
            b.set_bits(pos, w, next());
            pos += w;
            len -= w;
        }
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::array<uint64_t, 4> s_{};
};

}  // namespace nmc
