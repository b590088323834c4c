#include "mvp/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mvp {

std::string to_string(StopReason r) {
    switch (r) {
        case StopReason::optimum: return "optimum";
        case StopReason::local_optimum: return "local_optimum";
        case StopReason::strong_extremum: return "strong_extremum";
        case StopReason::evaluations: return "evaluations";
        case StopReason::iterations: return "iterations";
        case StopReason::stagnation: return "stagnation";
        case StopReason::wall_clock: return "wall_clock";
        case StopReason::restart_exhausted: return "restart_exhausted";
    }
    return "unknown";
}

BitVector one_plus_one_mutation(const BitVector& a, double p, SplitMix64& rng) {
    if (!(p > 0.0) || p > 1.0)
        throw std::invalid_argument("one_plus_one_mutation: p must be in (0, 1]");
    BitVector out = a;
    for (int i = 1; i <= a.size(); ++i)
        if (rng.bernoulli(p)) out.flip_bit(i);
    return out;
}

BitVector mv_random_mutation(const MergingMapping& m, const BitVector& a, SplitMix64& rng) {
    if (m.dimension() != a.size()) throw std::invalid_argument("mv_random_mutation: dimension mismatch");
    const int r = m.block_count();
    std::vector<char> selected(static_cast<std::size_t>(r));
    const double p_select = 1.0 / static_cast<double>(r);
    for (int j = 0; j < r; ++j) selected[static_cast<std::size_t>(j)] = rng.bernoulli(p_select);

    MergedPoint beta = tau_inverse(m, a);
    for (int j = 0; j < r; ++j) {
        if (!selected[static_cast<std::size_t>(j)]) continue;
        const int l = m.block_size(j);
        const double p = 1.0 / static_cast<double>(l);
        std::uint64_t v = beta.values[static_cast<std::size_t>(j)];
        for (int k = 0; k < l; ++k)
            if (rng.bernoulli(p)) v ^= std::uint64_t{1} << (l - 1 - k);
        beta.values[static_cast<std::size_t>(j)] = v;
    }
    return tau(m, beta);
}

namespace {

double elapsed_seconds(std::chrono::steady_clock::time_point t0) {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    return dt.count();
}

template <typename MutateFn>
SearchResult evolutionary_loop(const Objective& f, const BitVector& start, const SearchBudget& budget,
                               std::optional<double> target, MutateFn&& mutate) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t eval0 = f.eval_count();

    SearchResult res;
    BitVector cur = start;
    double cur_val = f.evaluate(cur);
    res.best_point = cur;
    res.best_value = cur_val;
    res.trajectory.push_back({f.eval_count(), cur_val});

    std::uint64_t stagnation = 0;
    for (;;) {
        if (target && res.best_value >= *target) {
            res.terminated_by = StopReason::optimum;
            break;
        }
        if (res.iterations >= budget.max_iterations) {
            res.terminated_by = StopReason::iterations;
            break;
        }
        if (f.eval_count() - eval0 >= budget.max_evaluations) {
            res.terminated_by = StopReason::evaluations;
            break;
        }
        if (stagnation >= budget.max_stagnation) {
            res.terminated_by = StopReason::stagnation;
            break;
        }
        if (budget.wall_clock_limit_s > 0.0 && elapsed_seconds(t0) >= budget.wall_clock_limit_s) {
            res.terminated_by = StopReason::wall_clock;
            break;
        }

        BitVector cand = mutate(cur);
        const double v = f.evaluate(cand);
        ++res.iterations;
        if (v >= cur_val) { // >= : drift across plateaus is part of the scheme
            cur = std::move(cand);
            cur_val = v;
        }
        if (cur_val > res.best_value) {
            res.best_point = cur;
            res.best_value = cur_val;
            res.trajectory.push_back({f.eval_count(), cur_val});
            stagnation = 0;
        } else {
            ++stagnation;
        }
    }
    res.evaluations = f.eval_count() - eval0;
    return res;
}

} // namespace

SearchResult one_plus_one_ea(const Objective& f, const BitVector& start, const SearchBudget& budget,
                             SplitMix64& rng, std::optional<double> target) {
    if (start.size() != f.dimension()) throw std::invalid_argument("one_plus_one_ea: dimension mismatch");
    const double p = 1.0 / static_cast<double>(f.dimension());
    return evolutionary_loop(f, start, budget, target,
                             [&](const BitVector& cur) { return one_plus_one_mutation(cur, p, rng); });
}

SearchResult one_plus_one_mvea(const Objective& f, const MergingMapping& m, const BitVector& start,
                               const SearchBudget& budget, SplitMix64& rng,
                               std::optional<double> target, const MveaOptions& options) {
    if (start.size() != f.dimension()) throw std::invalid_argument("one_plus_one_mvea: dimension mismatch");
    if (m.dimension() != f.dimension()) throw std::invalid_argument("one_plus_one_mvea: mapping mismatch");
    if (!options.redraw_mapping_each_step)
        return evolutionary_loop(f, start, budget, target,
                                 [&](const BitVector& cur) { return mv_random_mutation(m, cur, rng); });
    const int r = m.block_count();
    return evolutionary_loop(f, start, budget, target, [&](const BitVector& cur) {
        const MergingMapping fresh =
            random_merging_mapping(f.dimension(), r, options.redraw_mode, rng);
        return mv_random_mutation(fresh, cur, rng);
    });
}

namespace {

// Best strictly-improving candidate within one block, values ascending.
NeighborhoodScan scan_block(const Objective& f, const MergingMapping& m, const MergedPoint& beta,
                            BitVector& buf, int j, double current) {
    NeighborhoodScan out;
    out.value = current;
    const auto& blk = m.block(j);
    const std::uint64_t own = beta.values[static_cast<std::size_t>(j)];
    const std::uint64_t dom = std::uint64_t{1} << m.block_size(j);
    for (std::uint64_t v = 0; v < dom; ++v) {
        if (v == own) continue;
        write_block_bits(buf, blk, v);
        const double val = f.evaluate(buf);
        ++out.scanned;
        if (val > out.value) {
            out.improved = true;
            out.block = j;
            out.block_value = v;
            out.value = val;
        }
    }
    write_block_bits(buf, blk, own); // leave the buffer as it was
    return out;
}

NeighborhoodScan merge_scans(const std::vector<NeighborhoodScan>& parts, double current) {
    NeighborhoodScan out;
    out.value = current;
    for (const auto& part : parts) {
        out.scanned += part.scanned;
        if (part.improved && part.value > out.value) {
            out.improved = true;
            out.block = part.block;
            out.block_value = part.block_value;
            out.value = part.value;
        }
    }
    return out;
}

} // namespace

NeighborhoodScan best_improvement_scan_serial(const Objective& f, const MergingMapping& m,
                                              const MergedPoint& beta, const BitVector& alpha,
                                              double current) {
    std::vector<NeighborhoodScan> parts;
    parts.reserve(static_cast<std::size_t>(m.block_count()));
    BitVector buf = alpha;
    for (int j = 0; j < m.block_count(); ++j) parts.push_back(scan_block(f, m, beta, buf, j, current));
    return merge_scans(parts, current);
}

NeighborhoodScan best_improvement_scan_parallel(const Objective& f, const MergingMapping& m,
                                                const MergedPoint& beta, const BitVector& alpha,
                                                double current, int workers) {
#ifdef _OPENMP
    if (workers > 1) {
        const int r = m.block_count();
        std::vector<NeighborhoodScan> parts(static_cast<std::size_t>(r));
#pragma omp parallel num_threads(workers)
        {
            BitVector buf = alpha; // block writes are restored, one buffer per thread
#pragma omp for schedule(dynamic)
            for (int j = 0; j < r; ++j)
                parts[static_cast<std::size_t>(j)] = scan_block(f, m, beta, buf, j, current);
        }
        return merge_scans(parts, current);
    }
#else
    (void)workers;
#endif
    return best_improvement_scan_serial(f, m, beta, alpha, current);
}

NeighborhoodScan first_improvement_scan(const Objective& f, const MergingMapping& m,
                                        const MergedPoint& beta, const BitVector& alpha,
                                        double current, std::uint64_t max_evals) {
    NeighborhoodScan out;
    out.value = current;
    BitVector buf = alpha;
    for (int j = 0; j < m.block_count(); ++j) {
        const auto& blk = m.block(j);
        const std::uint64_t own = beta.values[static_cast<std::size_t>(j)];
        const std::uint64_t dom = std::uint64_t{1} << m.block_size(j);
        for (std::uint64_t v = 0; v < dom; ++v) {
            if (v == own) continue;
            if (out.scanned >= max_evals) {
                out.budget_hit = true;
                return out;
            }
            write_block_bits(buf, blk, v);
            const double val = f.evaluate(buf);
            ++out.scanned;
            if (val > current) {
                out.improved = true;
                out.block = j;
                out.block_value = v;
                out.value = val;
                return out;
            }
        }
        write_block_bits(buf, blk, own);
    }
    return out;
}

SearchResult mvhc_iteration(const Objective& f, const BitVector& start, const MergingMapping& m,
                            const SearchBudget& budget, int workers, ImprovementPolicy policy,
                            std::optional<double> start_value) {
    if (m.dimension() != f.dimension()) throw std::invalid_argument("mvhc_iteration: dimension mismatch");
    if (start.size() != f.dimension()) throw std::invalid_argument("mvhc_iteration: start dimension mismatch");

    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t eval0 = f.eval_count();
    const auto used = [&] { return f.eval_count() - eval0; };

    MergedPoint beta = tau_inverse(m, start);
    BitVector alpha = start;
    double cur = start_value ? *start_value : f.evaluate(start);

    SearchResult res;
    res.best_point = alpha;
    res.best_value = cur;
    res.trajectory.push_back({f.eval_count(), cur});

    for (;;) {
        if (res.iterations >= budget.max_iterations) {
            res.terminated_by = StopReason::iterations;
            break;
        }
        if (budget.wall_clock_limit_s > 0.0 && elapsed_seconds(t0) >= budget.wall_clock_limit_s) {
            res.terminated_by = StopReason::wall_clock;
            break;
        }
        const std::uint64_t spent = used();
        if (spent >= budget.max_evaluations) {
            res.terminated_by = StopReason::evaluations;
            break;
        }

        NeighborhoodScan scan;
        if (policy == ImprovementPolicy::first_improvement && workers <= 1) {
            scan = first_improvement_scan(f, m, beta, alpha, cur, budget.max_evaluations - spent);
        } else {
            // best-improvement always scans the whole neighborhood: the
            // result, and the evaluation count, are worker-count invariant
            scan = best_improvement_scan_parallel(f, m, beta, alpha, cur, workers);
        }

        if (scan.improved) {
            beta.values[static_cast<std::size_t>(scan.block)] = scan.block_value;
            write_block_bits(alpha, m.block(scan.block), scan.block_value);
            cur = scan.value;
            ++res.iterations;
            res.best_point = alpha;
            res.best_value = cur;
            res.trajectory.push_back({f.eval_count(), cur});
        }
        if (scan.budget_hit || used() >= budget.max_evaluations) {
            res.terminated_by = StopReason::evaluations;
            break;
        }
        if (!scan.improved) {
            res.terminated_by = StopReason::local_optimum;
            break;
        }
    }
    res.evaluations = used();
    return res;
}

SearchResult mvhc(const Objective& f, const BitVector& start, const MvhcOptions& options,
                  const SearchBudget& budget, SplitMix64& rng, TabuArchive* archive) {
    const int n = f.dimension();
    if (start.size() != n) throw std::invalid_argument("mvhc: start dimension mismatch");
    if (options.r < 1 || options.r >= n) throw std::invalid_argument("mvhc: need 1 <= r < n");
    if (options.stability_threshold < 1) throw std::invalid_argument("mvhc: K must be >= 1");
    if (options.workers < 1) throw std::invalid_argument("mvhc: workers must be >= 1");
    if (options.max_block_size < 1 ||
        static_cast<long long>(options.r) * options.max_block_size < n)
        throw std::invalid_argument("mvhc: block-size cap unattainable for this r");
    if (archive && archive->dimension() != n) throw std::invalid_argument("mvhc: archive dimension mismatch");

    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t eval0 = f.eval_count();
    const auto used = [&] { return f.eval_count() - eval0; };

    BitVector cur = start;
    double cur_val = f.evaluate(cur);

    SearchResult res;
    res.best_point = cur;
    res.best_value = cur_val;
    res.trajectory.push_back({f.eval_count(), cur_val});

    TabuArchive local_archive(n);
    TabuArchive& arch = archive ? *archive : local_archive;

    int stability = 0;
    int critical = 0;
    std::uint64_t stagnation = 0;

    for (;;) {
        if (options.target && res.best_value >= *options.target) {
            res.terminated_by = StopReason::optimum;
            break;
        }
        if (res.iterations >= budget.max_iterations) {
            res.terminated_by = StopReason::iterations;
            break;
        }
        if (used() >= budget.max_evaluations) {
            res.terminated_by = StopReason::evaluations;
            break;
        }
        if (stagnation >= budget.max_stagnation) {
            res.terminated_by = StopReason::stagnation;
            break;
        }
        double wall_left = 0.0;
        if (budget.wall_clock_limit_s > 0.0) {
            wall_left = budget.wall_clock_limit_s - elapsed_seconds(t0);
            if (wall_left <= 0.0) {
                res.terminated_by = StopReason::wall_clock;
                break;
            }
        }

        MergingMapping m = random_merging_mapping(n, options.r, options.mode, rng);
        while (m.max_block_size() > options.max_block_size)
            m = random_merging_mapping(n, options.r, options.mode, rng);

        SearchBudget inner;
        inner.max_evaluations = budget.max_evaluations - used();
        inner.wall_clock_limit_s = wall_left;
        const SearchResult step = mvhc_iteration(f, cur, m, inner, options.workers, options.policy, cur_val);
        ++res.iterations;

        const bool improved = step.best_value > cur_val;
        if (improved) {
            cur = step.best_point;
            cur_val = step.best_value;
            stability = 0;
            critical = 0;
        } else {
            ++stability;
            critical = std::max(critical, m.max_block_size());
        }

        if (cur_val > res.best_value) {
            res.best_point = cur;
            res.best_value = cur_val;
            res.trajectory.push_back({f.eval_count(), cur_val});
            stagnation = 0;
        } else {
            ++stagnation;
        }

        if (step.terminated_by == StopReason::evaluations && used() >= budget.max_evaluations) {
            res.terminated_by = StopReason::evaluations;
            break;
        }

        if (!improved && stability >= options.stability_threshold) {
            if (!options.restart) {
                res.strong_extremum = true;
                res.terminated_by = StopReason::strong_extremum;
                break;
            }
            record_strong_extremum(arch, cur, critical);
            const auto jump = relax_and_retry(initial_system(arch), rng);
            if (!jump) {
                res.terminated_by = StopReason::restart_exhausted;
                break;
            }
            cur = *jump;
            cur_val = f.evaluate(cur);
            stability = 0;
            critical = 0;
            if (cur_val > res.best_value) {
                res.best_point = cur;
                res.best_value = cur_val;
                res.trajectory.push_back({f.eval_count(), cur_val});
                stagnation = 0;
            }
        }
    }
    res.evaluations = used();
    return res;
}

double mvea_runtime_bound(int n, int r, int l) {
    if (r < 2 || r >= n)
        throw std::invalid_argument("mvea_runtime_bound: need 2 <= r < n");
    if (l < 2) throw std::invalid_argument("mvea_runtime_bound: need l >= 2");
    return static_cast<double>(r) * std::log(static_cast<double>(r)) +
           static_cast<double>(n) * std::log(static_cast<double>(l));
}

BigUint mvea_runtime_bound_exact(int n, int r, int l) {
    if (r < 2 || r >= n)
        throw std::invalid_argument("mvea_runtime_bound_exact: need 2 <= r < n");
    if (l < 2) throw std::invalid_argument("mvea_runtime_bound_exact: need l >= 2");
    BigUint out(1);
    for (int i = 0; i < r; ++i) out.mul_small(static_cast<std::uint32_t>(r));
    for (int i = 0; i < n; ++i) out.mul_small(static_cast<std::uint32_t>(l));
    return out;
}

double mvea_uniform_bound_exponent(int n, double delta) {
    if (n < 2) throw std::invalid_argument("mvea_uniform_bound_exponent: n must be >= 2");
    if (!(delta > 1.0) || delta > static_cast<double>(n))
        throw std::invalid_argument("mvea_uniform_bound_exponent: need 1 < delta <= n");
    const double ln_n = std::log(static_cast<double>(n));
    return static_cast<double>(n) *
           (1.0 / delta - std::log(delta) / (delta * ln_n) + std::log(delta + 1.0) / ln_n);
}

} // namespace mvp
