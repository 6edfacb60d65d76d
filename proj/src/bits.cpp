#include "nmc/bits.hpp"

#include <bit>
#include <functional>
#include <stdexcept>

namespace nmc {

namespace {

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

BitString BitString::from_bits(std::string_view bits) {
    BitString out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') out.set(i, true);
        else if (bits[i] != '0') throw std::invalid_argument("bit string must contain only 0/1");
    }
    return out;
}

BitString BitString::from_hex(std::string_view hex, std::size_t len) {
    if (hex.size() * 4 < len) throw std::length_error("hex string shorter than declared length");
    BitString out(len);
    for (std::size_t i = 0; i < hex.size(); ++i) {
        int v = hex_value(hex[i]);
        if (v < 0) throw std::invalid_argument("invalid hex digit");
        for (int k = 0; k < 4; ++k) {
            std::size_t pos = i * 4 + k;
            bool bit = (v >> (3 - k)) & 1;
            if (pos < len) out.set(pos, bit);
            else if (bit) throw std::length_error("hex string has nonzero bits past declared length");
        }
    }
    return out;
}

BitString BitString::from_hex(std::string_view hex) { return from_hex(hex, hex.size() * 4); }

BitString BitString::from_uint(uint64_t value, unsigned width) {
    BitString out(width);
    if (width) out.set_bits(0, width, value);
    return out;
}

std::string BitString::to_bits() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

std::string BitString::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::size_t nd = (len_ + 3) / 4;
    std::string s(nd, '0');
    for (std::size_t i = 0; i < nd; ++i) {
        std::size_t pos = i * 4;
        unsigned w = static_cast<unsigned>(std::min<std::size_t>(4, len_ - pos));
        unsigned v = static_cast<unsigned>(get_bits(pos, w)) << (4 - w);
        s[i] = digits[v];
    }
    return s;
}

bool BitString::at(std::size_t i) const {
    if (i < 1 || i > len_) throw std::out_of_range("bit index out of range");
    return get(i - 1);
}

BitString BitString::sub(std::size_t pos, std::size_t len) const {
    if (pos + len > len_) throw std::out_of_range("sub past end");
    BitString out(len);
    for (std::size_t k = 0; k < out.w_.size(); ++k) out.w_[k] = window(pos + 64 * k);
    out.clear_tail();
    return out;
}

void BitString::put(std::size_t pos, const BitString& src) {
    if (pos + src.len_ > len_) throw std::out_of_range("put past end");
    std::size_t done = 0;
    while (done < src.len_) {
        unsigned w = static_cast<unsigned>(std::min<std::size_t>(64, src.len_ - done));
        set_bits(pos + done, w, src.get_bits(done, w));
        done += w;
    }
}

void BitString::append(const BitString& tail) {
    std::size_t old = len_;
    resize(len_ + tail.len_);
    put(old, tail);
}

void BitString::resize(std::size_t len) {
    len_ = len;
    w_.resize(nwords(len), 0);
    clear_tail();
}

BitString& BitString::operator^=(const BitString& o) {
    if (o.len_ != len_) throw std::length_error("xor of unequal lengths");
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
}

bool BitString::operator<(const BitString& o) const {
    if (len_ != o.len_) return len_ < o.len_;
    for (std::size_t k = 0; k < w_.size(); ++k)
        if (w_[k] != o.w_[k]) return w_[k] < o.w_[k];
    return false;
}

bool BitString::is_zero() const {
    for (uint64_t w : w_)
        if (w) return false;
    return true;
}

std::size_t BitString::popcount() const {
    std::size_t c = 0;
    for (uint64_t w : w_) c += std::popcount(w);
    return c;
}

bool BitString::dot(const BitString& o) const {
    if (o.len_ != len_) throw std::length_error("dot of unequal lengths");
    uint64_t acc = 0;
    for (std::size_t k = 0; k < w_.size(); ++k) acc ^= w_[k] & o.w_[k];
    return std::popcount(acc) & 1;
}

std::size_t BitString::hash() const {
    std::size_t h = std::hash<std::size_t>{}(len_);
    for (uint64_t w : w_) h ^= std::hash<uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

void BitString::clear_tail() {
    unsigned r = len_ & 63;
    if (r && !w_.empty()) w_.back() &= ~uint64_t{0} << (64 - r);
}

BitString slice(const BitString& x, std::size_t w) {
    if (w > x.size()) throw std::length_error("slice width exceeds length");
    return x.sub(0, w);
}

BitString project(const BitString& x, const std::vector<std::size_t>& T) {
    BitString out(T.size());
    for (std::size_t j = 0; j < T.size(); ++j) {
        if (T[j] < 1 || T[j] > x.size()) throw std::out_of_range("projection index out of range");
        if (x.get(T[j] - 1)) out.set(j, true);
    }
    return out;
}

BitString concat(const BitString& a, const BitString& b) {
    BitString out = a;
    out.append(b);
    return out;
}

BitString concat(std::initializer_list<const BitString*> parts) {
    std::size_t len = 0;
    for (auto* p : parts) len += p->size();
    BitString out(len);
    std::size_t pos = 0;
    for (auto* p : parts) {
        out.put(pos, *p);
        pos += p->size();
    }
    return out;
}

}  // namespace nmc
