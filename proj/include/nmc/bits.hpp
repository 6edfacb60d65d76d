#pragma once

#include <boost/container/small_vector.hpp>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nmc {

// Bits are stored MSB-first: bit i lives in word i/64 at position 63 - i%64.
// Unused tail bits of the last word are always zero.
class BitString {
public:
    using Words = boost::container::small_vector<uint64_t, 2>;

    BitString() = default;
    explicit BitString(std::size_t len) : len_(len), w_(nwords(len), 0) {}

    static BitString from_bits(std::string_view bits);
    static BitString from_hex(std::string_view hex, std::size_t len);
    static BitString from_hex(std::string_view hex);
    static BitString from_uint(uint64_t value, unsigned width);

    std::string to_bits() const;
    std::string to_hex() const;

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (63 - (i & 63))) & 1u; }
    void set(std::size_t i, bool v) {
        uint64_t m = uint64_t{1} << (63 - (i & 63));
        if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= uint64_t{1} << (63 - (i & 63)); }

    // 1-based accessor matching the x_{i} notation.
    bool at(std::size_t i) const;

    // Read `width` <= 64 bits starting at `pos`; the bit at `pos` is the most significant.
    uint64_t get_bits(std::size_t pos, unsigned width) const {
        if (width == 0) return 0;
        if (pos + width > len_) throw std::out_of_range("get_bits past end");
        return window(pos) >> (64 - width);
    }
    void set_bits(std::size_t pos, unsigned width, uint64_t value) {
        uint64_t cur = get_bits(pos, width);
        if (width < 64) value &= (uint64_t{1} << width) - 1;
        xor_bits(pos, width, cur ^ value);
    }
    void xor_bits(std::size_t pos, unsigned width, uint64_t value) {
        if (width == 0) return;
        if (pos + width > len_) throw std::out_of_range("xor_bits past end");
        if (width < 64) value &= (uint64_t{1} << width) - 1;
        std::size_t wi = pos >> 6;
        unsigned off = pos & 63;
        uint64_t aligned = value << (64 - width);
        w_[wi] ^= aligned >> off;
        if (off + width > 64) w_[wi + 1] ^= aligned << (64 - off);
    }

    BitString sub(std::size_t pos, std::size_t len) const;
    void put(std::size_t pos, const BitString& src);
    void append(const BitString& tail);
    void resize(std::size_t len);

    BitString& operator^=(const BitString& o);
    friend BitString operator^(BitString a, const BitString& b) { return a ^= b; }
    bool operator==(const BitString& o) const { return len_ == o.len_ && w_ == o.w_; }
    bool operator!=(const BitString& o) const { return !(*this == o); }
    bool operator<(const BitString& o) const;

    bool is_zero() const;
    std::size_t popcount() const;
    // Parity of the bitwise AND with `o` (the GF(2) dot product).
    bool dot(const BitString& o) const;

    std::size_t word_count() const { return w_.size(); }
    const uint64_t* words() const { return w_.data(); }
    uint64_t* words() { return w_.data(); }
    uint64_t word(std::size_t k) const { return w_[k]; }
    // 64 bits starting at arbitrary bit offset (zero beyond the end).
    uint64_t window(std::size_t pos) const {
        std::size_t wi = pos >> 6;
        unsigned off = pos & 63;
        uint64_t hi = wi < w_.size() ? w_[wi] : 0;
        if (off == 0) return hi;
        uint64_t lo = wi + 1 < w_.size() ? w_[wi + 1] : 0;
        return (hi << off) | (lo >> (64 - off));
    }

    std::size_t hash() const;

    static std::size_t nwords(std::size_t len) { return (len + 63) / 64; }

private:
    void clear_tail();

    std::size_t len_ = 0;
    Words w_;
};

BitString slice(const BitString& x, std::size_t w);
BitString project(const BitString& x, const std::vector<std::size_t>& T);
BitString concat(const BitString& a, const BitString& b);
BitString concat(std::initializer_list<const BitString*> parts);

struct BitStringHash {
    std::size_t operator()(const BitString& b) const { return b.hash(); }
};

}  // namespace nmc
