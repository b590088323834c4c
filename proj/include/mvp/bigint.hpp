#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace mvp {

class SplitMix64;

/// Minimal arbitrary-precision unsigned integer: just enough arithmetic
/// for Stirling-number recurrences and exact products like r^r * l^n.
/// Limbs are base 2^32, little-endian, no leading zero limbs.
class BigUint {
public:
    BigUint() = default; // zero
    explicit BigUint(std::uint64_t v);

    bool is_zero() const noexcept { return limbs_.empty(); }

    BigUint& operator+=(const BigUint& other);
    friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }

    /// In-place multiply by a small factor.
    BigUint& mul_small(std::uint32_t m);

    bool operator==(const BigUint&) const = default;
    std::strong_ordering operator<=>(const BigUint& other) const noexcept;

    /// Number of significant bits (0 for zero).
    int bit_length() const noexcept;

    /// Natural logarithm. Value must be nonzero.
    double log_natural() const;

    std::string to_decimal() const;

private:
    friend BigUint random_below(const BigUint& bound, SplitMix64& rng);

    std::vector<std::uint32_t> limbs_;
};

/// x^e computed exactly.
BigUint big_pow(std::uint32_t x, std::uint32_t e);

/// Uniform integer in [0, bound); bound must be nonzero.
BigUint random_below(const BigUint& bound, SplitMix64& rng);

} // namespace mvp
