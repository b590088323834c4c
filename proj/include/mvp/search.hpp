#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mvp/bitvector.hpp"
#include "mvp/merging.hpp"
#include "mvp/objectives.hpp"
#include "mvp/restart.hpp"
#include "mvp/rng.hpp"

namespace mvp {

/// Stop limits, all relative to the moment the algorithm is entered.
/// Iteration means one accepted-or-rejected step of the algorithm at hand
/// (a hill-climbing move, a mutation, a mapping draw); stagnation counts
/// consecutive iterations without a best-value improvement.
struct SearchBudget {
    std::uint64_t max_evaluations = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t max_iterations = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t max_stagnation = std::numeric_limits<std::uint64_t>::max();
    double wall_clock_limit_s = 0.0; // 0 = no limit
};

enum class StopReason {
    optimum,           // declared target value reached
    local_optimum,     // no strictly better neighbor
    strong_extremum,   // survived K mapping draws without improvement
    evaluations,
    iterations,
    stagnation,
    wall_clock,
    restart_exhausted, // restart system stayed infeasible after relaxation
};

std::string to_string(StopReason r);

struct ImprovementEvent {
    std::uint64_t eval; // objective's cumulative counter at the improvement
    double value;
};

struct SearchResult {
    BitVector best_point;
    double best_value = 0.0;
    std::uint64_t evaluations = 0;
    std::uint64_t iterations = 0;
    std::vector<ImprovementEvent> trajectory; // first entry is the start value
    StopReason terminated_by = StopReason::local_optimum;
    bool strong_extremum = false;
};

enum class ImprovementPolicy {
    first_improvement, // take the first strictly better neighbor in order
    best_improvement,  // scan the whole neighborhood, take the best (first on ties)
};

template <typename Point>
struct HillClimbOutcome {
    Point point;
    double value = 0.0;
    double start_value = 0.0;
    std::uint64_t evaluations = 0;
    std::uint64_t moves = 0;
    bool is_local_max = false;
    StopReason terminated_by = StopReason::local_optimum;
};

/// Plain hill climbing over any point space. `eval` is a callable
/// double(const Point&); `neighbors` yields a finite container of
/// candidate points (the current point itself is skipped if present).
/// Stops at a point none of whose neighbors is strictly better, or when a
/// budget limit fires mid-scan.
template <typename Point, typename EvalFn, typename NeighborFn>
HillClimbOutcome<Point> hill_climb(EvalFn&& eval, Point start, NeighborFn&& neighbors,
                                   const SearchBudget& budget = {},
                                   ImprovementPolicy policy = ImprovementPolicy::first_improvement) {
    const auto t0 = std::chrono::steady_clock::now();
    HillClimbOutcome<Point> out;
    out.point = std::move(start);
    out.value = eval(out.point);
    out.start_value = out.value;
    out.evaluations = 1;

    const auto wall_exceeded = [&] {
        if (budget.wall_clock_limit_s <= 0.0) return false;
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        return dt.count() >= budget.wall_clock_limit_s;
    };

    for (;;) {
        if (out.moves >= budget.max_iterations) {
            out.terminated_by = StopReason::iterations;
            return out;
        }
        if (wall_exceeded()) {
            out.terminated_by = StopReason::wall_clock;
            return out;
        }
        std::optional<Point> best;
        double best_value = out.value;
        for (auto&& candidate : neighbors(out.point)) {
            if (candidate == out.point) continue;
            if (out.evaluations >= budget.max_evaluations) {
                // mid-neighborhood exhaustion: return flagged, keeping any
                // improvement already found
                if (best) {
                    out.point = std::move(*best);
                    out.value = best_value;
                    ++out.moves;
                }
                out.terminated_by = StopReason::evaluations;
                return out;
            }
            const double v = eval(candidate);
            ++out.evaluations;
            if (v > best_value) {
                best = candidate;
                best_value = v;
                if (policy == ImprovementPolicy::first_improvement) break;
            }
        }
        if (!best) {
            out.is_local_max = true;
            out.terminated_by = StopReason::local_optimum;
            return out;
        }
        out.point = std::move(*best);
        out.value = best_value;
        ++out.moves;
    }
}

/// Flip every bit independently with probability p, in index order.
BitVector one_plus_one_mutation(const BitVector& a, double p, SplitMix64& rng);

/// Standard (1+1) evolutionary algorithm with per-bit rate 1/n; a mutant
/// replaces the current point when its value is >= the current one.
SearchResult one_plus_one_ea(const Objective& f, const BitVector& start, const SearchBudget& budget,
                             SplitMix64& rng, std::optional<double> target = std::nullopt);

/// Merged-variable mutation: select each block with probability 1/r, then
/// flip each selected block's bits with probability 1/l_j.
BitVector mv_random_mutation(const MergingMapping& m, const BitVector& a, SplitMix64& rng);

struct MveaOptions {
    // Redrawing the mapping between mutations is off by default: the
    // algorithm is defined for one fixed mapping. Exposed for experiments.
    bool redraw_mapping_each_step = false;
    MappingMode redraw_mode = MappingMode::uniform;
};

/// (1+1) evolutionary algorithm driven by merged-variable mutations.
SearchResult one_plus_one_mvea(const Objective& f, const MergingMapping& m, const BitVector& start,
                               const SearchBudget& budget, SplitMix64& rng,
                               std::optional<double> target = std::nullopt,
                               const MveaOptions& options = {});

/// Outcome of scanning one full merged neighborhood (the point itself
/// excluded) for an improvement over `current`.
struct NeighborhoodScan {
    bool improved = false;
    bool budget_hit = false; // first-improvement scan stopped early
    int block = -1;
    std::uint64_t block_value = 0;
    double value = 0.0;
    std::uint64_t scanned = 0;
};

/// Serial reference scan: blocks in order, values ascending; returns the
/// best strictly-improving neighbor (first in traversal order on ties).
NeighborhoodScan best_improvement_scan_serial(const Objective& f, const MergingMapping& m,
                                              const MergedPoint& beta, const BitVector& alpha,
                                              double current);

/// Same result as the serial scan for any worker count; blocks are
/// distributed over an OpenMP team and per-block results reduced in block
/// order. Falls back to the serial scan when workers <= 1 or OpenMP is
/// unavailable.
NeighborhoodScan best_improvement_scan_parallel(const Objective& f, const MergingMapping& m,
                                                const MergedPoint& beta, const BitVector& alpha,
                                                double current, int workers);

/// Stop at the first strictly better neighbor; evaluates at most
/// max_evals points (budget_hit set when the cap stopped the scan).
NeighborhoodScan first_improvement_scan(const Objective& f, const MergingMapping& m,
                                        const MergedPoint& beta, const BitVector& alpha,
                                        double current, std::uint64_t max_evals);

/// One merged-space hill climb under a fixed mapping: maps the start into
/// the merged space, climbs to a merged local maximum, and maps back.
/// If the start was not a merged local maximum the returned value is
/// strictly greater than the start's.
///
/// First-improvement follows the serial traversal order and is only
/// meaningful for workers == 1; with more workers the scan always runs in
/// best-improvement mode, whose outcome is worker-count invariant.
SearchResult mvhc_iteration(const Objective& f, const BitVector& start, const MergingMapping& m,
                            const SearchBudget& budget = {}, int workers = 1,
                            ImprovementPolicy policy = ImprovementPolicy::first_improvement,
                            std::optional<double> start_value = std::nullopt);

struct MvhcOptions {
    int r = 0;
    MappingMode mode = MappingMode::uniform;
    int stability_threshold = 10; // K: draws without improvement before a point is strong
    int workers = 1;
    ImprovementPolicy policy = ImprovementPolicy::first_improvement;
    int max_block_size = 20; // redraw mappings whose largest block exceeds this
    bool restart = false;    // jump via the tabu distance system instead of stopping
    std::optional<double> target = std::nullopt;
};

/// Iterated merged-variable hill climbing: fresh random mapping per
/// iteration, strong-extremum detection after K non-improving draws, and
/// (optionally) distance-constrained restarts fed by the tabu archive.
/// When `archive` is given it is used and updated in place, which allows
/// resuming an experiment from a snapshot.
SearchResult mvhc(const Objective& f, const BitVector& start, const MvhcOptions& options,
                  const SearchBudget& budget, SplitMix64& rng, TabuArchive* archive = nullptr);

/// Natural log of the runtime bound r^r * l^n. Requires 2 <= r < n and
/// l >= 2 (the bound's derivation needs at least two blocks of size >= 2).
double mvea_runtime_bound(int n, int r, int l);

/// Exact companion of the bound for moderate n.
BigUint mvea_runtime_bound_exact(int n, int r, int l);

/// Exponent e(n, delta) such that the uniform-mapping bound reads n^e:
/// e = n * (1/delta - log_n(delta)/delta + log_n(delta + 1)), 1 < delta <= n.
double mvea_uniform_bound_exponent(int n, double delta);

} // namespace mvp
