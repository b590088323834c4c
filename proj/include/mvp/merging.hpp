#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "mvp/bigint.hpp"
#include "mvp/bitvector.hpp"
#include "mvp/rng.hpp"

namespace mvp {

/// A partition of the variable indices {1..n} into r ordered blocks.
///
/// Block j (0-based here) realizes the preimage set of merged variable
/// y_{j+1}; its length l_j fixes the domain size 2^{l_j}. The order of
/// indices inside a block is part of the mapping: together with the
/// natural binary encoding it pins the per-block bijection between block
/// values and bit patterns (most significant bit goes to the first index).
class MergingMapping {
public:
    MergingMapping(int n, std::vector<std::vector<int>> blocks);

    int dimension() const noexcept { return n_; }
    int block_count() const noexcept { return static_cast<int>(blocks_.size()); }
    const std::vector<int>& block(int j) const { return blocks_[static_cast<std::size_t>(j)]; }
    int block_size(int j) const { return static_cast<int>(blocks_[static_cast<std::size_t>(j)].size()); }
    int max_block_size() const noexcept { return max_block_size_; }
    const std::vector<std::vector<int>>& blocks() const noexcept { return blocks_; }

    std::string to_json() const;
    static MergingMapping from_json(const std::string& text);

    bool operator==(const MergingMapping&) const = default;

private:
    int n_;
    int max_block_size_;
    std::vector<std::vector<int>> blocks_;
};

/// A point of the merged space: one value per block, value_j < 2^{l_j}.
struct MergedPoint {
    std::vector<std::uint64_t> values;

    bool operator==(const MergedPoint&) const = default;
    auto operator<=>(const MergedPoint&) const = default;
};

enum class MappingMode { occupancy, uniform };

bool conforms(const MergingMapping& m, const MergedPoint& beta);

/// Write `value` into the bits addressed by `block`, MSB to the first index.
inline void write_block_bits(BitVector& a, const std::vector<int>& block, std::uint64_t value) {
    const int l = static_cast<int>(block.size());
    for (int k = 0; k < l; ++k)
        a.set(block[static_cast<std::size_t>(k)], (value >> (l - 1 - k)) & 1u);
}

inline std::uint64_t read_block_bits(const BitVector& a, const std::vector<int>& block) {
    std::uint64_t v = 0;
    for (int idx : block) v = (v << 1) | (a.get(idx) ? 1u : 0u);
    return v;
}

/// The induced bijection: merged point -> hypercube point.
BitVector tau(const MergingMapping& m, const MergedPoint& beta);

/// Inverse direction: hypercube point -> merged point.
MergedPoint tau_inverse(const MergingMapping& m, const BitVector& alpha);

/// Hamming distance over merged coordinates. Shapes must match.
int hamming_distance(const MergedPoint& a, const MergedPoint& b);

/// Draw a random merging mapping with r blocks.
///
/// occupancy: every index lands in a uniformly random block; draws with an
/// empty block are rejected and redrawn, preserving surjectivity without
/// bias among the surviving assignments.
/// uniform:   a random permutation split so that (n mod r) blocks have size
/// floor(n/r)+1 and the rest floor(n/r).
MergingMapping random_merging_mapping(int n, int r, MappingMode mode, SplitMix64& rng);

/// Stirling number of the second kind, exact.
BigUint stirling2(int n, int r);

/// Number of distinct merging mappings on n variables:
/// sum over r = 1..n-1 of r! * S(n, r).
BigUint count_merging_mappings(int n);

/// |radius-1 merged neighborhood| = sum_j 2^{l_j} + (1 - r).
/// Independent of the point. Requires sum_j 2^{l_j} to fit in 64 bits.
std::uint64_t merged_neighborhood_size(const MergingMapping& m);

/// The full radius-1 neighborhood: beta first, then for each block j in
/// order all 2^{l_j}-1 points differing from beta only in value_j
/// (ascending value order, skipping beta's own value).
std::vector<MergedPoint> merged_neighborhood(const MergingMapping& m, const MergedPoint& beta);

/// One block's slice of the neighborhood, independently consumable.
std::vector<MergedPoint> merged_neighborhood_block(const MergingMapping& m, const MergedPoint& beta, int j);

} // namespace mvp
