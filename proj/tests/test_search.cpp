#include <doctest.h>

#include <cmath>

#include "mvp/search.hpp"

#include "oracles.hpp"

using mvp::BitVector;
using mvp::MergedPoint;
using mvp::MergingMapping;
using mvp::SearchBudget;
using mvp::StopReason;

namespace {

MergingMapping split_mapping(int n, int r) {
    // contiguous blocks 1..n/r, n/r+1..2n/r, ...
    std::vector<std::vector<int>> blocks;
    const int size = n / r;
    for (int j = 0; j < r; ++j) {
        std::vector<int> blk;
        for (int k = 1; k <= size; ++k) blk.push_back(j * size + k);
        blocks.push_back(blk);
    }
    return MergingMapping(n, blocks);
}

} // namespace

TEST_CASE("hill climbing on onemax reaches the optimum") {
    mvp::OneMaxObjective f(4);
    const auto out = mvp::hill_climb(
        [&](const BitVector& p) { return f.evaluate(p); }, BitVector::from_string("0000"),
        [](const BitVector& p) { return mvp::hamming1_neighborhood(p); });
    CHECK(out.point.to_string() == "1111");
    CHECK(out.value == 4);
    CHECK(out.is_local_max);
    CHECK(out.terminated_by == StopReason::local_optimum);
}

TEST_CASE("hill climbing on trap walks into the deceptive maximum") {
    mvp::TrapObjective f(4);
    // independent landscape check first: 1111 is a radius-1 local max
    for (const auto& nb : mvp::hamming1_neighborhood(BitVector::from_string("1111")))
        CHECK(f.evaluate(nb) <= f.evaluate(BitVector::from_string("1111")));

    const auto out = mvp::hill_climb(
        [&](const BitVector& p) { return f.evaluate(p); }, BitVector::from_string("0111"),
        [](const BitVector& p) { return mvp::hamming1_neighborhood(p); });
    CHECK(out.point.to_string() == "1111");
    CHECK(out.value == 4); // not the global maximum 5 at 0000
}

TEST_CASE("hill climbing returns an unimproved local max unchanged") {
    mvp::OneMaxObjective f(6);
    const auto start = BitVector::from_string("111111");
    const auto out = mvp::hill_climb(
        [&](const BitVector& p) { return f.evaluate(p); }, start,
        [](const BitVector& p) { return mvp::hamming1_neighborhood(p); });
    CHECK(out.point == start);
    CHECK(out.moves == 0);
    CHECK(out.evaluations == 7); // start + 6 neighbors
    CHECK(out.is_local_max);
}

TEST_CASE("hill climbing honors the evaluation budget mid-neighborhood") {
    mvp::CallableObjective f(8, [](const BitVector&) { return 1.0; });
    SearchBudget budget;
    budget.max_evaluations = 4;
    const auto out = mvp::hill_climb(
        [&](const BitVector& p) { return f.evaluate(p); }, BitVector(8),
        [](const BitVector& p) { return mvp::hamming1_neighborhood(p); }, budget);
    CHECK(out.terminated_by == StopReason::evaluations);
    CHECK(out.evaluations == 4);
    CHECK_FALSE(out.is_local_max);
}

TEST_CASE("hill climbing works over the merged space") {
    mvp::OneMaxObjective base(6);
    const auto m = split_mapping(6, 2);
    const auto conj = mvp::conjugate(base, m);
    const auto out = mvp::hill_climb(
        [&](const MergedPoint& b) { return conj.evaluate(b); },
        mvp::tau_inverse(m, BitVector(6)),
        [&](const MergedPoint& b) { return mvp::merged_neighborhood(m, b); }, SearchBudget{},
        mvp::ImprovementPolicy::best_improvement);
    CHECK(out.value == 6);
    CHECK(mvp::tau(m, out.point).to_string() == "111111");
    CHECK(out.moves == 2); // each block jumps straight to its all-ones value
}

TEST_CASE("point mutation flips each bit with probability p") {
    mvp::SplitMix64 rng(1);
    const auto a = BitVector::from_string("10110");
    CHECK(mvp::one_plus_one_mutation(a, 1.0, rng).to_string() == "01001"); // p=1: complement

    CHECK_THROWS_AS(mvp::one_plus_one_mutation(a, 0.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(mvp::one_plus_one_mutation(a, 1.5, rng), std::invalid_argument);

    // p so small that nothing flips in practice
    for (int i = 0; i < 100; ++i) CHECK(mvp::one_plus_one_mutation(a, 1e-9, rng) == a);
}

TEST_CASE("point mutation mean flip count is 1 at p = 1/n") {
    const int n = 32;
    mvp::SplitMix64 rng(99);
    const auto a = BitVector::random(n, rng);
    const int trials = 100000;
    std::int64_t flips = 0;
    for (int t = 0; t < trials; ++t)
        flips += mvp::hamming_distance(a, mvp::one_plus_one_mutation(a, 1.0 / n, rng));
    const double mean = static_cast<double>(flips) / trials;
    CHECK(mean == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("(1+1)-EA climbs onemax reliably") {
    int successes = 0;
    for (int seed = 1; seed <= 100; ++seed) {
        mvp::SplitMix64 rng(static_cast<std::uint64_t>(seed));
        mvp::OneMaxObjective f(20);
        SearchBudget budget;
        budget.max_evaluations = 1000000;
        const auto start = BitVector::random(20, rng);
        const auto res = mvp::one_plus_one_ea(f, start, budget, rng, 20.0);
        if (res.best_value == 20.0) ++successes;
    }
    CHECK(successes >= 95); // calibrated: all 100 seeds reach the optimum
}

TEST_CASE("(1+1)-EA accepts every mutation on a constant objective") {
    mvp::CallableObjective f(10, [](const BitVector&) { return 3.0; });
    mvp::SplitMix64 rng(5);
    SearchBudget budget;
    budget.max_iterations = 50;
    const auto res = mvp::one_plus_one_ea(f, BitVector(10), budget, rng);
    CHECK(res.best_value == 3.0);
    CHECK(res.iterations == 50);
    CHECK(res.terminated_by == StopReason::iterations);
    CHECK(res.trajectory.size() == 1); // no strict improvement ever
}

TEST_CASE("(1+1)-EA with a one-iteration budget returns the better of start and mutant") {
    mvp::OneMaxObjective f(12);
    mvp::SplitMix64 rng(8);
    SearchBudget budget;
    budget.max_iterations = 1;
    const auto start = BitVector::random(12, rng);
    mvp::SplitMix64 replay = rng; // replay the mutation the algorithm will draw
    const auto res = mvp::one_plus_one_ea(f, start, budget, replay);

    mvp::SplitMix64 again = rng;
    const auto mutant = mvp::one_plus_one_mutation(start, 1.0 / 12, again);
    const double expected = std::max(static_cast<double>(start.count_ones()),
                                     static_cast<double>(mutant.count_ones()));
    CHECK(res.best_value == expected);
    CHECK(res.evaluations == 2);
}

TEST_CASE("merged mutation with r = 1 reduces to the plain mutation") {
    const int n = 16;
    std::vector<int> all;
    for (int i = 1; i <= n; ++i) all.push_back(i);
    const MergingMapping m(n, {all});

    mvp::SplitMix64 rng_a(123), rng_b(123);
    const auto a = BitVector::random(n, rng_a);
    rng_b.next_u64(); // align: consume the same draws BitVector::random used
    for (int i = 1; i < (n + 63) / 64; ++i) rng_b.next_u64();

    for (int trial = 0; trial < 200; ++trial) {
        const auto merged = mvp::mv_random_mutation(m, a, rng_a);
        rng_b.next_double(); // the single always-successful selection trial
        const auto plain = mvp::one_plus_one_mutation(a, 1.0 / n, rng_b);
        CHECK(merged == plain);
    }
}

TEST_CASE("merged mutation leaves the point unchanged when no block is selected") {
    mvp::SplitMix64 rng(7);
    const auto m = mvp::random_merging_mapping(20, 5, mvp::MappingMode::uniform, rng);
    const auto a = BitVector::random(20, rng);
    int unchanged = 0;
    for (int t = 0; t < 1000; ++t)
        if (mvp::mv_random_mutation(m, a, rng) == a) ++unchanged;
    // P(no block selected) = (1 - 1/5)^5 ~ 0.33; unchanged also happens when
    // selected blocks mutate no bit
    CHECK(unchanged > 200);
    CHECK(unchanged < 700);
}

TEST_CASE("merged mutation changes one bit on average") {
    mvp::SplitMix64 rng(11);
    for (int mapping_trial = 0; mapping_trial < 3; ++mapping_trial) {
        const int n = 16 + static_cast<int>(rng.next_below(48));
        const int r = 2 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n / 2 - 2)));
        const auto m = mvp::random_merging_mapping(n, r, mvp::MappingMode::uniform, rng);
        const auto a = BitVector::random(n, rng);
        const int trials = 100000;
        std::int64_t flips = 0;
        for (int t = 0; t < trials; ++t)
            flips += mvp::hamming_distance(a, mvp::mv_random_mutation(m, a, rng));
        const double mean = static_cast<double>(flips) / trials;
        CHECK(mean == doctest::Approx(1.0).epsilon(0.03));
    }

    // the expectation does not depend on the block shape: occupancy draws
    // with singleton blocks included still average one flip
    const auto skewed = mvp::random_merging_mapping(24, 12, mvp::MappingMode::occupancy, rng);
    const auto a = BitVector::random(24, rng);
    std::int64_t flips = 0;
    for (int t = 0; t < 100000; ++t)
        flips += mvp::hamming_distance(a, mvp::mv_random_mutation(skewed, a, rng));
    CHECK(static_cast<double>(flips) / 100000 == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("(1+1)-MVEA climbs onemax reliably") {
    int successes = 0;
    for (int seed = 1; seed <= 100; ++seed) {
        mvp::SplitMix64 rng(static_cast<std::uint64_t>(seed));
        mvp::OneMaxObjective f(20);
        const auto m = mvp::random_merging_mapping(20, 5, mvp::MappingMode::uniform, rng);
        SearchBudget budget;
        budget.max_evaluations = 1000000;
        const auto start = BitVector::random(20, rng);
        const auto res = mvp::one_plus_one_mvea(f, m, start, budget, rng, 20.0);
        if (res.best_value == 20.0) ++successes;
    }
    CHECK(successes >= 95);
}

TEST_CASE("(1+1)-MVEA with a zero-iteration budget only evaluates the start") {
    mvp::OneMaxObjective f(8);
    mvp::SplitMix64 rng(3);
    const auto m = split_mapping(8, 2);
    SearchBudget budget;
    budget.max_iterations = 0;
    const auto start = BitVector::random(8, rng);
    const auto res = mvp::one_plus_one_mvea(f, m, start, budget, rng);
    CHECK(res.best_point == start);
    CHECK(res.evaluations == 1);
    CHECK(res.iterations == 0);
}

TEST_CASE("mvhc iteration drives both blocks of onemax to all-ones") {
    mvp::OneMaxObjective f(6);
    const auto m = split_mapping(6, 2);
    const auto best = mvp::mvhc_iteration(f, BitVector(6), m, SearchBudget{}, 1,
                                          mvp::ImprovementPolicy::best_improvement);
    CHECK(best.best_point.to_string() == "111111");
    CHECK(best.best_value == 6);
    CHECK(best.iterations == 2); // best-improvement: one jump per block
    CHECK(best.terminated_by == StopReason::local_optimum);

    // the default first-improvement walk lands in the same place
    const auto first = mvp::mvhc_iteration(f, BitVector(6), m);
    CHECK(first.best_point.to_string() == "111111");
    CHECK(first.iterations >= 2);
}

TEST_CASE("mvhc iteration returns a merged local maximum unchanged") {
    mvp::TrapObjective f(6);
    const auto m = split_mapping(6, 2);
    const auto start = BitVector::from_string("111111");

    // enumerate the 15-point merged neighborhood: nothing beats value 6
    const auto beta = mvp::tau_inverse(m, start);
    for (const auto& gamma : mvp::merged_neighborhood(m, beta))
        CHECK(f.evaluate(mvp::tau(m, gamma)) <= 6);

    const auto res = mvp::mvhc_iteration(f, start, m);
    CHECK(res.best_point == start);
    CHECK(res.best_value == 6);
    CHECK(res.iterations == 0);
}

TEST_CASE("mvhc iteration improves exactly the non-local-max starts") {
    mvp::SplitMix64 rng(21);
    const int n = 6;
    const auto table = oracle::random_table(n, rng);
    const auto f = oracle::table_objective(n, table);
    for (int mapping_trial = 0; mapping_trial < 3; ++mapping_trial) {
        const int r = 1 + static_cast<int>(rng.next_below(n - 1));
        const auto m = mvp::random_merging_mapping(n, r, mvp::MappingMode::occupancy, rng);
        for (const auto& start : oracle::all_points(n)) {
            const auto beta = mvp::tau_inverse(m, start);
            const double own = table[oracle::bits_of(start)];
            bool is_local_max = true;
            for (const auto& gamma : mvp::merged_neighborhood(m, beta))
                if (table[oracle::bits_of(mvp::tau(m, gamma))] > own) is_local_max = false;

            const auto res = mvp::mvhc_iteration(f, start, m);
            if (is_local_max) {
                CHECK(res.best_point == start);
                CHECK(res.best_value == own);
            } else {
                CHECK(res.best_value > own);
            }
        }
    }
}

TEST_CASE("first-improvement and best-improvement both end in merged local maxima") {
    mvp::SplitMix64 rng(22);
    const int n = 10;
    const auto table = oracle::random_table(n, rng);
    const auto f = oracle::table_objective(n, table);
    const auto m = mvp::random_merging_mapping(n, 3, mvp::MappingMode::occupancy, rng);
    const auto start = BitVector::random(n, rng);

    for (auto policy : {mvp::ImprovementPolicy::first_improvement,
                        mvp::ImprovementPolicy::best_improvement}) {
        const auto res = mvp::mvhc_iteration(f, start, m, SearchBudget{}, 1, policy);
        const auto beta = mvp::tau_inverse(m, res.best_point);
        for (const auto& gamma : mvp::merged_neighborhood(m, beta))
            CHECK(table[oracle::bits_of(mvp::tau(m, gamma))] <= res.best_value);
        CHECK(res.best_value >= table[oracle::bits_of(start)]);
    }
}

TEST_CASE("mvhc iteration flags an exhausted budget") {
    mvp::CallableObjective f(8, [](const BitVector&) { return 1.0; });
    const auto m = split_mapping(8, 2);
    SearchBudget budget;
    budget.max_evaluations = 5;

    auto res = mvp::mvhc_iteration(f, BitVector(8), m, budget);
    CHECK(res.terminated_by == StopReason::evaluations);
    CHECK(res.evaluations == 5); // start + 4 scanned candidates, capped exactly

    // best-improvement always finishes its scan, then notices the budget
    res = mvp::mvhc_iteration(f, BitVector(8), m, budget, 1,
                              mvp::ImprovementPolicy::best_improvement);
    CHECK(res.terminated_by == StopReason::evaluations);
    CHECK(res.evaluations == 31); // start + the full 30-point neighborhood
}

TEST_CASE("parallel neighborhood scan equals the serial reference") {
    mvp::SplitMix64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 6 + static_cast<int>(rng.next_below(10));
        const auto table = oracle::random_table(n, rng);
        const auto f = oracle::table_objective(n, table);
        const int r = 2 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - 2)));
        const auto m = mvp::random_merging_mapping(n, r, mvp::MappingMode::occupancy, rng);
        const auto alpha = BitVector::random(n, rng);
        const auto beta = mvp::tau_inverse(m, alpha);
        const double current = table[oracle::bits_of(alpha)];

        const auto serial = mvp::best_improvement_scan_serial(f, m, beta, alpha, current);
        for (int workers : {2, 3, 8}) {
            const auto par = mvp::best_improvement_scan_parallel(f, m, beta, alpha, current, workers);
            CHECK(par.improved == serial.improved);
            CHECK(par.block == serial.block);
            CHECK(par.block_value == serial.block_value);
            CHECK(par.value == serial.value);
            CHECK(par.scanned == serial.scanned);
        }
    }
}

TEST_CASE("mvhc iteration result does not depend on the worker count") {
    mvp::SplitMix64 rng(24);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 12;
        const auto table = oracle::random_table(n, rng);
        const auto m = mvp::random_merging_mapping(n, 3, mvp::MappingMode::uniform, rng);
        const auto start = BitVector::random(n, rng);

        std::optional<mvp::SearchResult> reference;
        for (int workers : {1, 2, 4}) {
            const auto f = oracle::table_objective(n, table);
            const auto res = mvp::mvhc_iteration(f, start, m, SearchBudget{}, workers,
                                                 mvp::ImprovementPolicy::best_improvement);
            if (!reference) {
                reference = res;
                continue;
            }
            CHECK(res.best_point == reference->best_point);
            CHECK(res.best_value == reference->best_value);
            CHECK(res.evaluations == reference->evaluations);
            CHECK(res.iterations == reference->iterations);
        }
    }
}

TEST_CASE("iterated mvhc solves onemax without false strong extrema") {
    for (int seed = 1; seed <= 100; ++seed) {
        mvp::SplitMix64 rng(static_cast<std::uint64_t>(seed));
        mvp::OneMaxObjective f(30);
        mvp::MvhcOptions opt;
        opt.r = 5;
        opt.stability_threshold = 3;
        opt.target = 30.0;
        const auto start = BitVector::random(30, rng);
        const auto res = mvp::mvhc(f, start, opt, SearchBudget{}, rng);
        CHECK(res.best_value == 30.0);
        CHECK(res.terminated_by == StopReason::optimum);
        CHECK_FALSE(res.strong_extremum);
    }
}

TEST_CASE("iterated mvhc declares a constant function strong after K draws") {
    mvp::CallableObjective f(12, [](const BitVector&) { return 0.5; });
    mvp::SplitMix64 rng(31);
    mvp::MvhcOptions opt;
    opt.r = 3;
    opt.stability_threshold = 4;
    const auto start = BitVector::random(12, rng);
    const auto res = mvp::mvhc(f, start, opt, SearchBudget{}, rng);
    CHECK(res.strong_extremum);
    CHECK(res.terminated_by == StopReason::strong_extremum);
    CHECK(res.iterations == 4);
    CHECK(res.best_point == start);
}

TEST_CASE("iterated mvhc under a tight budget does not raise the strong flag") {
    mvp::CallableObjective f(12, [](const BitVector&) { return 0.5; });
    mvp::SplitMix64 rng(32);
    mvp::MvhcOptions opt;
    opt.r = 3;
    opt.stability_threshold = 50;
    SearchBudget budget;
    budget.max_evaluations = 40;
    const auto res = mvp::mvhc(f, BitVector(12), opt, budget, rng);
    CHECK_FALSE(res.strong_extremum);
    CHECK(res.terminated_by == StopReason::evaluations);
}

TEST_CASE("restart-enabled mvhc escapes the trap neighborhood") {
    // trap: all-ones is strong for contiguous small blocks, all-zeros wins
    for (int seed = 1; seed <= 10; ++seed) {
        mvp::SplitMix64 rng(static_cast<std::uint64_t>(seed));
        mvp::TrapObjective f(10);
        mvp::MvhcOptions opt;
        opt.r = 2;
        opt.stability_threshold = 3;
        opt.restart = true;
        opt.target = 11.0;
        SearchBudget budget;
        budget.max_evaluations = 2000000;
        budget.max_stagnation = 10000;
        const auto res = mvp::mvhc(f, BitVector::from_string("1111111111"), opt, budget, rng);
        if (res.best_value == 11.0) {
            CHECK(res.terminated_by == StopReason::optimum);
            return; // at least one seed escapes via the restart jump
        }
    }
    FAIL("no seed escaped the trap with restarts enabled");
}

TEST_CASE("the whole mvhc driver is worker-count invariant under best-improvement") {
    for (int trial = 0; trial < 4; ++trial) {
        std::optional<mvp::SearchResult> reference;
        for (const int workers : {1, 4}) {
            mvp::SplitMix64 rng(900 + static_cast<std::uint64_t>(trial));
            mvp::TrapObjective f(14);
            mvp::MvhcOptions opt;
            opt.r = 3;
            opt.stability_threshold = 3;
            opt.restart = true;
            opt.workers = workers;
            opt.policy = mvp::ImprovementPolicy::best_improvement;
            opt.target = 15.0;
            SearchBudget budget;
            budget.max_evaluations = 100000;
            budget.max_stagnation = 400;
            const auto start = BitVector::random(14, rng);
            const auto res = mvp::mvhc(f, start, opt, budget, rng);
            if (!reference) {
                reference = res;
                continue;
            }
            CHECK(res.best_point == reference->best_point);
            CHECK(res.best_value == reference->best_value);
            CHECK(res.evaluations == reference->evaluations);
            CHECK(res.iterations == reference->iterations);
            CHECK(res.terminated_by == reference->terminated_by);
        }
    }
}

TEST_CASE("reported best values re-evaluate to themselves") {
    mvp::SplitMix64 rng(901);
    const int n = 18;
    const auto table = oracle::random_table(n, rng);
    const auto f = oracle::table_objective(n, table);
    SearchBudget budget;
    budget.max_evaluations = 5000;
    const auto m = mvp::random_merging_mapping(n, 3, mvp::MappingMode::uniform, rng);
    mvp::MvhcOptions opt;
    opt.r = 3;

    const mvp::SearchResult results[] = {
        mvp::one_plus_one_ea(f, BitVector::random(n, rng), budget, rng),
        mvp::one_plus_one_mvea(f, m, BitVector::random(n, rng), budget, rng),
        mvp::mvhc(f, BitVector::random(n, rng), opt, budget, rng),
        mvp::mvhc_iteration(f, BitVector::random(n, rng), m, budget),
    };
    for (const auto& res : results) CHECK(f.evaluate(res.best_point) == res.best_value);
}

TEST_CASE("mvhc records strong extrema into a caller-provided archive") {
    mvp::CallableObjective f(8, [](const BitVector&) { return 1.0; });
    mvp::SplitMix64 rng(51);
    mvp::TabuArchive archive(8);
    mvp::MvhcOptions opt;
    opt.r = 2;
    opt.stability_threshold = 2;
    opt.restart = true;
    SearchBudget budget;
    budget.max_iterations = 200;
    const auto res = mvp::mvhc(f, BitVector(8), opt, budget, rng, &archive);
    CHECK_FALSE(archive.empty());
    for (const auto& entry : archive.entries()) CHECK(entry.critical_size >= 1);
    CHECK((res.terminated_by == StopReason::iterations ||
           res.terminated_by == StopReason::restart_exhausted));

    // the snapshot restores to an archive the driver can resume from
    const auto restored = mvp::TabuArchive::from_json(archive.to_json());
    CHECK(restored.entries().size() == archive.entries().size());
}

TEST_CASE("search is deterministic for a fixed seed") {
    for (int which = 0; which < 3; ++which) {
        std::optional<mvp::SearchResult> reference;
        for (int repeat = 0; repeat < 2; ++repeat) {
            mvp::SplitMix64 rng(4242);
            mvp::OneMaxObjective f(24);
            const auto start = BitVector::random(24, rng);
            SearchBudget budget;
            budget.max_evaluations = 20000;
            mvp::SearchResult res;
            if (which == 0) {
                res = mvp::one_plus_one_ea(f, start, budget, rng, 24.0);
            } else if (which == 1) {
                const auto m = mvp::random_merging_mapping(24, 4, mvp::MappingMode::uniform, rng);
                res = mvp::one_plus_one_mvea(f, m, start, budget, rng, 24.0);
            } else {
                mvp::MvhcOptions opt;
                opt.r = 4;
                opt.target = 24.0;
                res = mvp::mvhc(f, start, opt, budget, rng);
            }
            if (!reference) {
                reference = res;
                continue;
            }
            CHECK(res.best_point == reference->best_point);
            CHECK(res.best_value == reference->best_value);
            CHECK(res.evaluations == reference->evaluations);
            CHECK(res.iterations == reference->iterations);
            REQUIRE(res.trajectory.size() == reference->trajectory.size());
            for (std::size_t i = 0; i < res.trajectory.size(); ++i) {
                CHECK(res.trajectory[i].eval == reference->trajectory[i].eval);
                CHECK(res.trajectory[i].value == reference->trajectory[i].value);
            }
        }
    }
}

TEST_CASE("accepted values never decrease") {
    mvp::SplitMix64 rng(77);
    const int n = 16;
    const auto table = oracle::random_table(n, rng);
    const auto f = oracle::table_objective(n, table);
    SearchBudget budget;
    budget.max_iterations = 2000;
    const auto m = mvp::random_merging_mapping(n, 4, mvp::MappingMode::uniform, rng);
    for (const auto& res :
         {mvp::one_plus_one_ea(f, BitVector::random(n, rng), budget, rng),
          mvp::one_plus_one_mvea(f, m, BitVector::random(n, rng), budget, rng)}) {
        for (std::size_t i = 1; i < res.trajectory.size(); ++i)
            CHECK(res.trajectory[i].value > res.trajectory[i - 1].value);
    }
}

TEST_CASE("runtime bound calculators") {
    CHECK(mvp::mvea_runtime_bound(4, 2, 2) == doctest::Approx(std::log(64.0)).epsilon(1e-12));
    CHECK(mvp::mvea_runtime_bound_exact(4, 2, 2).to_decimal() == "64");
    CHECK_THROWS_AS(mvp::mvea_runtime_bound(4, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(mvp::mvea_runtime_bound(4, 4, 2), std::invalid_argument);
    CHECK_THROWS_AS(mvp::mvea_runtime_bound(4, 2, 1), std::invalid_argument);

    // log route equals exact big-integer route
    mvp::SplitMix64 rng(88);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 4 + static_cast<int>(rng.next_below(60));
        const int r = 2 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - 2)));
        const int l = 2 + static_cast<int>(rng.next_below(14));
        const double via_log = mvp::mvea_runtime_bound(n, r, l);
        const double via_exact = mvp::mvea_runtime_bound_exact(n, r, l).log_natural();
        CHECK(via_log == doctest::Approx(via_exact).epsilon(1e-12));
    }

    // well below the n^n baseline for n = 27, r = n/3
    CHECK(mvp::mvea_runtime_bound(27, 9, 3) < 27.0 * std::log(27.0));
}

TEST_CASE("uniform-mapping bound exponent") {
    // independent route: exponent = ((n/d) ln(n/d) + n ln(d+1)) / ln n
    const auto reference = [](int n, double d) {
        const long double nn = static_cast<long double>(n);
        const long double rr = nn / d;
        return static_cast<double>((rr * std::log(rr) + nn * std::log(static_cast<long double>(d) + 1.0L)) /
                                   std::log(nn));
    };

    CHECK(mvp::mvea_uniform_bound_exponent(27, 3.0) ==
          doctest::Approx(reference(27, 3.0)).epsilon(1e-12));
    CHECK(mvp::mvea_uniform_bound_exponent(27, 3.0) == doctest::Approx(17.3567356).epsilon(1e-6));

    // delta = n: the first two terms cancel, leaving n*log_n(n+1)
    CHECK(mvp::mvea_uniform_bound_exponent(50, 50.0) ==
          doctest::Approx(50.0 * std::log(51.0) / std::log(50.0)).epsilon(1e-12));

    CHECK_THROWS_AS(mvp::mvea_uniform_bound_exponent(27, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(mvp::mvea_uniform_bound_exponent(27, 28.0), std::invalid_argument);

    // the cube-root choice beats the n^n baseline for every n in range
    for (int n = 27; n <= 1000; ++n) {
        const double exponent = mvp::mvea_uniform_bound_exponent(n, std::cbrt(static_cast<double>(n)));
        CHECK(exponent < n);
    }
}
