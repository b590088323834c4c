#include "mvp/merging.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace mvp {

MergingMapping::MergingMapping(int n, std::vector<std::vector<int>> blocks)
    : n_(n), max_block_size_(0), blocks_(std::move(blocks)) {
    const int r = static_cast<int>(blocks_.size());
    if (n < 2) throw std::invalid_argument("MergingMapping: dimension must be >= 2");
    if (r < 1 || r >= n) throw std::invalid_argument("MergingMapping: block count must satisfy 1 <= r < n");
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    int covered = 0;
    for (const auto& blk : blocks_) {
        if (blk.empty()) throw std::invalid_argument("MergingMapping: empty block");
        for (int idx : blk) {
            if (idx < 1 || idx > n) throw std::invalid_argument("MergingMapping: variable index out of range");
            if (seen[static_cast<std::size_t>(idx)])
                throw std::invalid_argument("MergingMapping: blocks are not disjoint");
            seen[static_cast<std::size_t>(idx)] = true;
            ++covered;
        }
        max_block_size_ = std::max(max_block_size_, static_cast<int>(blk.size()));
    }
    if (covered != n) throw std::invalid_argument("MergingMapping: blocks do not cover all variables");
    if (max_block_size_ > 63) throw std::invalid_argument("MergingMapping: block size exceeds 63 bits");
}

std::string MergingMapping::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n_;
    j["blocks"] = blocks_;
    return j.dump();
}

MergingMapping MergingMapping::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    return MergingMapping(j.at("n").get<int>(), j.at("blocks").get<std::vector<std::vector<int>>>());
}

bool conforms(const MergingMapping& m, const MergedPoint& beta) {
    if (static_cast<int>(beta.values.size()) != m.block_count()) return false;
    for (int j = 0; j < m.block_count(); ++j)
        if (beta.values[static_cast<std::size_t>(j)] >= (std::uint64_t{1} << m.block_size(j))) return false;
    return true;
}

BitVector tau(const MergingMapping& m, const MergedPoint& beta) {
    if (!conforms(m, beta)) throw std::invalid_argument("tau: point does not conform to mapping shape");
    BitVector out(m.dimension());
    for (int j = 0; j < m.block_count(); ++j)
        write_block_bits(out, m.block(j), beta.values[static_cast<std::size_t>(j)]);
    return out;
}

MergedPoint tau_inverse(const MergingMapping& m, const BitVector& alpha) {
    if (alpha.size() != m.dimension()) throw std::invalid_argument("tau_inverse: dimension mismatch");
    MergedPoint beta;
    beta.values.reserve(static_cast<std::size_t>(m.block_count()));
    for (int j = 0; j < m.block_count(); ++j) beta.values.push_back(read_block_bits(alpha, m.block(j)));
    return beta;
}

int hamming_distance(const MergedPoint& a, const MergedPoint& b) {
    if (a.values.size() != b.values.size())
        throw std::invalid_argument("hamming_distance: merged points differ in shape");
    int d = 0;
    for (std::size_t j = 0; j < a.values.size(); ++j)
        if (a.values[j] != b.values[j]) ++d;
    return d;
}

namespace {

constexpr int kMaxBlockBits = 63; // block values are stored in 64-bit words

bool blocks_representable(const std::vector<std::vector<int>>& blocks) {
    return std::all_of(blocks.begin(), blocks.end(), [](const auto& b) {
        return !b.empty() && b.size() <= kMaxBlockBits;
    });
}

// Uniform surjection onto r labeled blocks, sampled exactly: a uniform
// partition of {1..n} into r nonempty blocks (driven by the Stirling
// recurrence) followed by a uniform labeling. This is the conditional
// distribution of balls-in-boxes given no empty box, so it can replace
// rejection sampling when the acceptance probability is hopeless
// (r close to n).
std::vector<std::vector<int>> sample_surjection_exact(int n, int r, SplitMix64& rng) {
    std::vector<std::vector<BigUint>> S(static_cast<std::size_t>(n) + 1,
                                        std::vector<BigUint>(static_cast<std::size_t>(r) + 1));
    S[0][0] = BigUint(1);
    for (int k = 1; k <= n; ++k)
        for (int j = 1; j <= std::min(k, r); ++j) {
            BigUint v = S[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j)];
            v.mul_small(static_cast<std::uint32_t>(j));
            v += S[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j - 1)];
            S[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = std::move(v);
        }

    // element k either opens its own block (weight S(k-1, j-1)) or joins
    // one of the j blocks of the smaller partition (weight j * S(k-1, j))
    std::vector<char> opens(static_cast<std::size_t>(n) + 1, 0);
    int j = r;
    for (int k = n; k >= 1; --k) {
        const BigUint x =
            random_below(S[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)], rng);
        if (x < S[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j - 1)]) {
            opens[static_cast<std::size_t>(k)] = 1;
            --j;
        }
    }

    std::vector<std::vector<int>> blocks;
    blocks.reserve(static_cast<std::size_t>(r));
    for (int k = 1; k <= n; ++k) {
        if (opens[static_cast<std::size_t>(k)])
            blocks.push_back({k});
        else
            blocks[rng.next_below(blocks.size())].push_back(k);
    }
    for (std::size_t i = blocks.size(); i-- > 1;)
        std::swap(blocks[i], blocks[rng.next_below(i + 1)]);
    return blocks;
}

} // namespace

MergingMapping random_merging_mapping(int n, int r, MappingMode mode, SplitMix64& rng) {
    if (r < 1 || r >= n) throw std::invalid_argument("random_merging_mapping: need 1 <= r < n");
    if ((n + r - 1) / r > kMaxBlockBits)
        throw std::invalid_argument("random_merging_mapping: domains would exceed 63 bits");
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(r));
    if (mode == MappingMode::occupancy) {
        bool done = false;
        for (int attempt = 0; attempt < 1000 && !done; ++attempt) {
            for (auto& b : blocks) b.clear();
            for (int idx = 1; idx <= n; ++idx)
                blocks[rng.next_below(static_cast<std::uint64_t>(r))].push_back(idx);
            done = blocks_representable(blocks);
        }
        // acceptance probability is tiny when r is close to n; switch to
        // the exact sampler of the same conditional distribution
        while (!done) {
            blocks = sample_surjection_exact(n, r, rng);
            done = blocks_representable(blocks);
        }
    } else {
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 1);
        for (int i = n - 1; i > 0; --i) {
            const auto k = rng.next_below(static_cast<std::uint64_t>(i) + 1);
            std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(k)]);
        }
        const int base = n / r;
        const int bigger = n % r;
        std::size_t pos = 0;
        for (int j = 0; j < r; ++j) {
            const int lj = base + (j < bigger ? 1 : 0);
            blocks[static_cast<std::size_t>(j)].assign(perm.begin() + static_cast<std::ptrdiff_t>(pos),
                                                       perm.begin() + static_cast<std::ptrdiff_t>(pos + lj));
            pos += static_cast<std::size_t>(lj);
        }
    }
    return MergingMapping(n, std::move(blocks));
}

BigUint stirling2(int n, int r) {
    if (n < 0 || r < 0) throw std::invalid_argument("stirling2: negative argument");
    if (r > n) return BigUint();
    if (n == 0) return BigUint(1); // S(0,0) = 1
    if (r == 0) return BigUint();
    // S(n,r) = r*S(n-1,r) + S(n-1,r-1), rolled row by row
    std::vector<BigUint> row(static_cast<std::size_t>(r) + 1);
    row[0] = BigUint(1); // S(0,0)
    for (int i = 1; i <= n; ++i) {
        for (int k = std::min(i, r); k >= 1; --k) {
            BigUint next = row[static_cast<std::size_t>(k)];
            next.mul_small(static_cast<std::uint32_t>(k));
            next += row[static_cast<std::size_t>(k - 1)];
            row[static_cast<std::size_t>(k)] = std::move(next);
        }
        row[0] = BigUint(); // S(i,0) = 0 for i >= 1
    }
    return row[static_cast<std::size_t>(r)];
}

BigUint count_merging_mappings(int n) {
    if (n < 2) throw std::invalid_argument("count_merging_mappings: n must be >= 2");
    BigUint total;
    for (int r = 1; r <= n - 1; ++r) {
        BigUint term = stirling2(n, r);
        for (int k = 2; k <= r; ++k) term.mul_small(static_cast<std::uint32_t>(k));
        total += term;
    }
    return total;
}

std::uint64_t merged_neighborhood_size(const MergingMapping& m) {
    std::uint64_t total = 0;
    for (int j = 0; j < m.block_count(); ++j) {
        const std::uint64_t dom = std::uint64_t{1} << m.block_size(j);
        if (total > ~std::uint64_t{0} - dom)
            throw std::overflow_error("merged_neighborhood_size: domain sizes overflow 64 bits");
        total += dom;
    }
    return total + 1 - static_cast<std::uint64_t>(m.block_count());
}

std::vector<MergedPoint> merged_neighborhood(const MergingMapping& m, const MergedPoint& beta) {
    if (!conforms(m, beta)) throw std::invalid_argument("merged_neighborhood: shape mismatch");
    std::vector<MergedPoint> out;
    out.reserve(static_cast<std::size_t>(merged_neighborhood_size(m)));
    out.push_back(beta);
    for (int j = 0; j < m.block_count(); ++j) {
        const std::uint64_t dom = std::uint64_t{1} << m.block_size(j);
        for (std::uint64_t v = 0; v < dom; ++v) {
            if (v == beta.values[static_cast<std::size_t>(j)]) continue;
            MergedPoint p = beta;
            p.values[static_cast<std::size_t>(j)] = v;
            out.push_back(std::move(p));
        }
    }
    return out;
}

std::vector<MergedPoint> merged_neighborhood_block(const MergingMapping& m, const MergedPoint& beta, int j) {
    if (!conforms(m, beta)) throw std::invalid_argument("merged_neighborhood_block: shape mismatch");
    if (j < 0 || j >= m.block_count())
        throw std::invalid_argument("merged_neighborhood_block: block index out of range");
    std::vector<MergedPoint> out;
    const std::uint64_t dom = std::uint64_t{1} << m.block_size(j);
    out.reserve(static_cast<std::size_t>(dom - 1));
    for (std::uint64_t v = 0; v < dom; ++v) {
        if (v == beta.values[static_cast<std::size_t>(j)]) continue;
        MergedPoint p = beta;
        p.values[static_cast<std::size_t>(j)] = v;
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace mvp
