#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvp/rng.hpp"

namespace mvp {

/// A point of {0,1}^n, packed into 64-bit words.
///
/// Bits are indexed 1..n throughout the public API; bit 1 is the leftmost
/// character of the string form. Unused high bits of the last word are
/// kept zero so that equality and ordering can compare words directly.
class BitVector {
public:
    BitVector() : n_(0) {}

    explicit BitVector(int n) : n_(n), words_(word_count(n), 0) {
        if (n < 0) throw std::invalid_argument("BitVector: negative dimension");
    }

    static BitVector from_string(const std::string& s);
    static BitVector random(int n, SplitMix64& rng);

    int size() const noexcept { return n_; }

    bool get(int i) const {
        check_index(i);
        return (words_[static_cast<std::size_t>(i - 1) >> 6] >> ((i - 1) & 63)) & 1u;
    }

    void set(int i, bool v) {
        check_index(i);
        const std::size_t w = static_cast<std::size_t>(i - 1) >> 6;
        const std::uint64_t mask = std::uint64_t{1} << ((i - 1) & 63);
        if (v)
            words_[w] |= mask;
        else
            words_[w] &= ~mask;
    }

    void flip_bit(int i) {
        check_index(i);
        words_[static_cast<std::size_t>(i - 1) >> 6] ^= std::uint64_t{1} << ((i - 1) & 63);
    }

    BitVector with_flipped(int i) const {
        BitVector out = *this;
        out.flip_bit(i);
        return out;
    }

    int count_ones() const noexcept {
        int c = 0;
        for (std::uint64_t w : words_) c += std::popcount(w);
        return c;
    }

    std::string to_string() const;

    bool operator==(const BitVector&) const = default;
    auto operator<=>(const BitVector&) const = default;

private:
    static std::size_t word_count(int n) { return (static_cast<std::size_t>(n) + 63) / 64; }

    void check_index(int i) const {
        if (i < 1 || i > n_) throw std::invalid_argument("BitVector: bit index out of range");
    }

    friend int hamming_distance(const BitVector& a, const BitVector& b);

    int n_;
    std::vector<std::uint64_t> words_;
};

/// Number of positions where a and b differ. Dimensions must match.
int hamming_distance(const BitVector& a, const BitVector& b);

/// Copy of a with bit i complemented (1-based).
BitVector flip(const BitVector& a, int i);

/// All n+1 points at Hamming distance <= 1 from a, in deterministic order:
/// a itself first, then the flips of bits 1..n.
std::vector<BitVector> hamming1_neighborhood(const BitVector& a);

} // namespace mvp
