// One-shot calibration runs behind the thresholds frozen in the test
// suite (see tests/data/calibration.md). Re-run after algorithmic changes
// to confirm the frozen numbers still hold.

#include <cstdio>
#include <vector>

#include "mvp/experiment.hpp"
#include "mvp/objectives.hpp"
#include "mvp/search.hpp"

namespace {

mvp::CnfFormula random_3cnf(int n, int clauses, mvp::SplitMix64& rng) {
    std::vector<std::vector<int>> cls;
    for (int c = 0; c < clauses; ++c) {
        int v1 = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        int v2 = v1, v3 = v1;
        while (v2 == v1) v2 = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        while (v3 == v1 || v3 == v2)
            v3 = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        const auto lit = [&](int v) { return rng.bernoulli(0.5) ? v : -v; };
        cls.push_back({lit(v1), lit(v2), lit(v3)});
    }
    return mvp::CnfFormula(n, cls);
}

bool dpll_satisfiable(const mvp::CnfFormula& f, const mvp::PartialAssignment& seed) {
    const auto res = mvp::unit_propagate(f, seed);
    if (res.status == mvp::PropagationStatus::conflict) return false;
    int branch = 0;
    for (int v = 1; v <= f.num_vars(); ++v)
        if (!res.assignment.is_assigned(v)) {
            branch = v;
            break;
        }
    if (branch == 0) return true;
    for (bool value : {false, true}) {
        mvp::PartialAssignment next = res.assignment;
        next.assign(branch, value);
        if (dpll_satisfiable(f, next)) return true;
    }
    return false;
}

void search_benchmark() {
    // satisfiable random 3-CNF: n=60, ratio 3.0; instance seeds drawn as
    // base+i, keeping the first 10 whose instance a DPLL oracle proves
    // satisfiable. MVHC: uniform mappings, r=10, K=10, restarts on,
    // 10^6 evaluations, workers=1.
    const int n = 60;
    const int clauses = 180;
    const std::uint64_t base_seed = 1000;

    std::printf("search-effectiveness benchmark (n=%d, m=%d)\n", n, clauses);
    std::printf("%10s %6s %10s %12s %s\n", "inst_seed", "sat", "success", "evaluations",
                "terminated_by");

    int kept = 0, successes = 0;
    for (std::uint64_t s = base_seed; kept < 10; ++s) {
        mvp::SplitMix64 gen(s);
        const auto formula = random_3cnf(n, clauses, gen);
        if (!dpll_satisfiable(formula, mvp::PartialAssignment(n))) {
            std::printf("%10llu  unsat   (skipped)\n", static_cast<unsigned long long>(s));
            continue;
        }
        ++kept;

        std::vector<int> all_vars;
        for (int v = 1; v <= n; ++v) all_vars.push_back(v);
        mvp::UpObjective objective(formula, all_vars);

        mvp::SplitMix64 rng(s * 7919 + 1);
        const auto start = mvp::BitVector::random(n, rng);
        mvp::MvhcOptions opt;
        opt.r = 10;
        opt.stability_threshold = 10;
        opt.restart = true;
        opt.target = static_cast<double>(clauses);
        mvp::SearchBudget budget;
        budget.max_evaluations = 1000000;
        const auto res = mvp::mvhc(objective, start, opt, budget, rng);

        const bool ok = res.best_value == clauses;
        if (ok) ++successes;
        std::printf("%10llu  sat    %8s %12llu %s\n", static_cast<unsigned long long>(s),
                    ok ? "yes" : "no", static_cast<unsigned long long>(res.evaluations),
                    mvp::to_string(res.terminated_by).c_str());
    }
    std::printf("successes: %d / 10\n\n", successes);
}

void ea_calibration() {
    std::printf("(1+1)-EA and (1+1)-MVEA on onemax(20), 100 seeds, 10^6 eval budget\n");
    for (const bool merged : {false, true}) {
        int successes = 0;
        std::uint64_t total_evals = 0;
        for (int seed = 1; seed <= 100; ++seed) {
            mvp::SplitMix64 rng(static_cast<std::uint64_t>(seed));
            mvp::OneMaxObjective f(20);
            mvp::SearchBudget budget;
            budget.max_evaluations = 1000000;
            const auto start = mvp::BitVector::random(20, rng);
            mvp::SearchResult res;
            if (merged) {
                const auto m = mvp::random_merging_mapping(20, 5, mvp::MappingMode::uniform, rng);
                res = mvp::one_plus_one_mvea(f, m, start, budget, rng, 20.0);
            } else {
                res = mvp::one_plus_one_ea(f, start, budget, rng, 20.0);
            }
            if (res.best_value == 20.0) ++successes;
            total_evals += res.evaluations;
        }
        std::printf("  %-6s successes %d/100, mean evaluations %.0f\n", merged ? "mvea" : "ea",
                    successes, static_cast<double>(total_evals) / 100.0);
    }
}

} // namespace

int main() {
    search_benchmark();
    ea_calibration();
    return 0;
}
