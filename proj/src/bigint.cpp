#include "mvp/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mvp/rng.hpp"

namespace mvp {

BigUint::BigUint(std::uint64_t v) {
    while (v != 0) {
        limbs_.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
        v >>= 32;
    }
}

BigUint& BigUint::operator+=(const BigUint& other) {
    const std::size_t len = std::max(limbs_.size(), other.limbs_.size());
    limbs_.resize(len, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < len; ++i) {
        std::uint64_t s = carry + limbs_[i];
        if (i < other.limbs_.size()) s += other.limbs_[i];
        limbs_[i] = static_cast<std::uint32_t>(s & 0xffffffffu);
        carry = s >> 32;
    }
    if (carry != 0) limbs_.push_back(static_cast<std::uint32_t>(carry));
    return *this;
}

BigUint& BigUint::mul_small(std::uint32_t m) {
    if (m == 0) {
        limbs_.clear();
        return *this;
    }
    std::uint64_t carry = 0;
    for (auto& limb : limbs_) {
        const std::uint64_t p = static_cast<std::uint64_t>(limb) * m + carry;
        limb = static_cast<std::uint32_t>(p & 0xffffffffu);
        carry = p >> 32;
    }
    while (carry != 0) {
        limbs_.push_back(static_cast<std::uint32_t>(carry & 0xffffffffu));
        carry >>= 32;
    }
    return *this;
}

std::strong_ordering BigUint::operator<=>(const BigUint& other) const noexcept {
    if (limbs_.size() != other.limbs_.size()) return limbs_.size() <=> other.limbs_.size();
    for (std::size_t i = limbs_.size(); i-- > 0;)
        if (limbs_[i] != other.limbs_[i]) return limbs_[i] <=> other.limbs_[i];
    return std::strong_ordering::equal;
}

int BigUint::bit_length() const noexcept {
    if (limbs_.empty()) return 0;
    const std::uint32_t top = limbs_.back();
    int bits = 0;
    for (std::uint32_t t = top; t != 0; t >>= 1) ++bits;
    return bits + 32 * static_cast<int>(limbs_.size() - 1);
}

double BigUint::log_natural() const {
    if (limbs_.empty()) throw std::domain_error("BigUint::log_natural of zero");
    // value = hi * 2^shift with hi carrying the top 64 significant bits
    const int shift = std::max(0, bit_length() - 64);
    const auto limb = [&](int i) -> std::uint64_t {
        return i < static_cast<int>(limbs_.size()) ? limbs_[static_cast<std::size_t>(i)] : 0;
    };
    const int q = shift / 32;
    const int rem = shift % 32;
    std::uint64_t hi;
    if (rem == 0)
        hi = limb(q) | (limb(q + 1) << 32);
    else
        hi = (limb(q) >> rem) | (limb(q + 1) << (32 - rem)) | (limb(q + 2) << (64 - rem));
    return std::log(static_cast<double>(hi)) + static_cast<double>(shift) * std::log(2.0);
}

std::string BigUint::to_decimal() const {
    if (limbs_.empty()) return "0";
    std::vector<std::uint32_t> work(limbs_);
    std::string out;
    while (!work.empty()) {
        // divide by 10^9, collecting the remainder
        std::uint64_t rem = 0;
        for (int i = static_cast<int>(work.size()) - 1; i >= 0; --i) {
            const std::uint64_t cur = (rem << 32) | work[static_cast<std::size_t>(i)];
            work[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(cur / 1000000000u);
            rem = cur % 1000000000u;
        }
        while (!work.empty() && work.back() == 0) work.pop_back();
        std::string chunk = std::to_string(rem);
        if (!work.empty()) chunk.insert(0, 9 - chunk.size(), '0');
        out.insert(0, chunk);
    }
    return out;
}

BigUint big_pow(std::uint32_t x, std::uint32_t e) {
    BigUint out(1);
    for (std::uint32_t i = 0; i < e; ++i) out.mul_small(x);
    return out;
}

BigUint random_below(const BigUint& bound, SplitMix64& rng) {
    if (bound.is_zero()) throw std::invalid_argument("random_below: zero bound");
    const int bits = bound.bit_length();
    const std::size_t limbs = (static_cast<std::size_t>(bits) + 31) / 32;
    const int top_bits = bits - 32 * static_cast<int>(limbs - 1);
    const std::uint32_t top_mask =
        top_bits >= 32 ? 0xffffffffu : ((std::uint32_t{1} << top_bits) - 1u);
    for (;;) {
        BigUint x;
        x.limbs_.resize(limbs);
        for (auto& limb : x.limbs_) limb = static_cast<std::uint32_t>(rng.next_u64());
        x.limbs_.back() &= top_mask;
        while (!x.limbs_.empty() && x.limbs_.back() == 0) x.limbs_.pop_back();
        if (x < bound) return x;
    }
}

} // namespace mvp
