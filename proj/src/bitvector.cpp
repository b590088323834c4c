#include "mvp/bitvector.hpp"

namespace mvp {

BitVector BitVector::from_string(const std::string& s) {
    BitVector out(static_cast<int>(s.size()));
    for (int i = 1; i <= out.n_; ++i) {
        const char c = s[static_cast<std::size_t>(i - 1)];
        if (c == '1')
            out.set(i, true);
        else if (c != '0')
            throw std::invalid_argument("BitVector: string must contain only '0'/'1'");
    }
    return out;
}

BitVector BitVector::random(int n, SplitMix64& rng) {
    BitVector out(n);
    for (auto& w : out.words_) w = rng.next_u64();
    // zero the unused high bits of the last word
    const int tail = n & 63;
    if (tail != 0 && !out.words_.empty()) out.words_.back() &= (~std::uint64_t{0}) >> (64 - tail);
    return out;
}

std::string BitVector::to_string() const {
    std::string s(static_cast<std::size_t>(n_), '0');
    for (int i = 1; i <= n_; ++i)
        if (get(i)) s[static_cast<std::size_t>(i - 1)] = '1';
    return s;
}

int hamming_distance(const BitVector& a, const BitVector& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("hamming_distance: dimension mismatch");
    int d = 0;
    for (std::size_t w = 0; w < a.words_.size(); ++w) d += std::popcount(a.words_[w] ^ b.words_[w]);
    return d;
}

BitVector flip(const BitVector& a, int i) { return a.with_flipped(i); }

std::vector<BitVector> hamming1_neighborhood(const BitVector& a) {
    std::vector<BitVector> out;
    out.reserve(static_cast<std::size_t>(a.size()) + 1);
    out.push_back(a);
    for (int i = 1; i <= a.size(); ++i) out.push_back(a.with_flipped(i));
    return out;
}

} // namespace mvp
