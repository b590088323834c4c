#pragma once

#include <cstdint>

namespace mvp {

/// SplitMix64: counter-based generator with identical output on every
/// platform. The state advances by a fixed increment per draw, so derived
/// streams (repeats, workers) can be split off by index without overlap
/// in practice.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next_u64() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double next_double() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound). bound must be >= 1.
    /// Rejection-sampled so the result is exactly uniform.
    std::uint64_t next_below(std::uint64_t bound) noexcept {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t v = next_u64();
            if (v >= threshold) return v % bound;
        }
    }

    bool bernoulli(double p) noexcept { return next_double() < p; }

    /// Independent stream for repeat/worker `index`.
    SplitMix64 split(std::uint64_t index) const noexcept {
        SplitMix64 fork(state_ ^ (0x9e3779b97f4a7c15ULL * (index + 0x632be59bd9b4e019ULL)));
        fork.next_u64();
        return fork;
    }

private:
    std::uint64_t state_;
};

} // namespace mvp
