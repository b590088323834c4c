#include "mvp/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <memory>
#include <sstream>

#include "mvp/objectives.hpp"

namespace mvp {

std::string to_string(ObjectiveKind k) {
    switch (k) {
        case ObjectiveKind::onemax: return "onemax";
        case ObjectiveKind::trap: return "trap";
        case ObjectiveKind::maxsat: return "maxsat";
        case ObjectiveKind::upsat: return "upsat";
    }
    return "unknown";
}

std::string to_string(AlgorithmKind k) {
    switch (k) {
        case AlgorithmKind::hc: return "hc";
        case AlgorithmKind::mvhc: return "mvhc";
        case AlgorithmKind::ea: return "ea";
        case AlgorithmKind::mvea: return "mvea";
    }
    return "unknown";
}

std::string to_string(MappingMode m) {
    return m == MappingMode::occupancy ? "occupancy" : "uniform";
}

ObjectiveKind parse_objective_kind(const std::string& s) {
    if (s == "onemax") return ObjectiveKind::onemax;
    if (s == "trap") return ObjectiveKind::trap;
    if (s == "maxsat") return ObjectiveKind::maxsat;
    if (s == "upsat") return ObjectiveKind::upsat;
    throw ConfigError("objective", "unknown kind '" + s + "'");
}

AlgorithmKind parse_algorithm_kind(const std::string& s) {
    if (s == "hc") return AlgorithmKind::hc;
    if (s == "mvhc") return AlgorithmKind::mvhc;
    if (s == "ea") return AlgorithmKind::ea;
    if (s == "mvea") return AlgorithmKind::mvea;
    throw ConfigError("algo", "unknown algorithm '" + s + "'");
}

MappingMode parse_mapping_mode(const std::string& s) {
    if (s == "occupancy") return MappingMode::occupancy;
    if (s == "uniform") return MappingMode::uniform;
    throw ConfigError("map-mode", "unknown mode '" + s + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int ExperimentReport::target_reached_runs() const {
    if (!config.target) return 0;
    int count = 0;
    for (const auto& run : runs)
        if (run.result.best_value >= *config.target) ++count;
    return count;
}

namespace {

struct ResolvedProblem {
    int n = 0;
    std::optional<CnfFormula> formula;
    std::vector<int> input_vars; // upsat only
};

ResolvedProblem resolve_problem(const ExperimentConfig& cfg) {
    ResolvedProblem problem;
    switch (cfg.objective) {
        case ObjectiveKind::onemax:
            if (cfg.n < 1) throw ConfigError("n", "onemax requires n >= 1");
            problem.n = cfg.n;
            return problem;
        case ObjectiveKind::trap:
            if (cfg.n < 2) throw ConfigError("n", "trap requires n >= 2");
            problem.n = cfg.n;
            return problem;
        case ObjectiveKind::maxsat:
        case ObjectiveKind::upsat: break;
    }
    if (cfg.cnf_path.empty()) throw ConfigError("cnf", "CNF-backed objective needs a DIMACS path");
    std::string text;
    try {
        text = read_text_file(cfg.cnf_path);
    } catch (const std::exception& e) {
        throw ConfigError("cnf", e.what());
    }
    try {
        problem.formula = parse_dimacs(text);
    } catch (const ParseError& e) {
        throw ConfigError("cnf", std::string("parse failed: ") + e.what());
    }
    if (cfg.objective == ObjectiveKind::maxsat) {
        problem.n = problem.formula->num_vars();
        return problem;
    }
    // upsat: explicit sidecar wins, then embedded declarations, then all vars
    if (!cfg.input_vars_path.empty()) {
        try {
            problem.input_vars = parse_input_vars(read_text_file(cfg.input_vars_path));
        } catch (const std::exception& e) {
            throw ConfigError("input-vars", e.what());
        }
    } else {
        problem.input_vars = dimacs_input_vars(text);
    }
    if (problem.input_vars.empty()) {
        problem.input_vars.resize(static_cast<std::size_t>(problem.formula->num_vars()));
        for (int v = 1; v <= problem.formula->num_vars(); ++v)
            problem.input_vars[static_cast<std::size_t>(v - 1)] = v;
    }
    for (int v : problem.input_vars)
        if (v < 1 || v > problem.formula->num_vars())
            throw ConfigError("input-vars", "variable " + std::to_string(v) + " out of range");
    problem.n = static_cast<int>(problem.input_vars.size());
    return problem;
}

std::unique_ptr<Objective> make_objective(const ExperimentConfig& cfg, const ResolvedProblem& problem) {
    switch (cfg.objective) {
        case ObjectiveKind::onemax: return onemax(problem.n);
        case ObjectiveKind::trap: return trap(problem.n);
        case ObjectiveKind::maxsat: return clause_count_objective(*problem.formula);
        case ObjectiveKind::upsat: return up_objective(*problem.formula, problem.input_vars);
    }
    throw ConfigError("objective", "unknown kind");
}

SearchBudget resolve_budget(const ExperimentConfig& cfg, int n) {
    SearchBudget b;
    b.max_evaluations =
        cfg.budget_evaluations == 0 ? std::numeric_limits<std::uint64_t>::max() : cfg.budget_evaluations;
    b.max_iterations =
        cfg.budget_iterations == 0 ? std::numeric_limits<std::uint64_t>::max() : cfg.budget_iterations;
    b.max_stagnation = cfg.budget_stagnation == 0 ? 50 * static_cast<std::uint64_t>(n)
                                                  : cfg.budget_stagnation;
    b.wall_clock_limit_s = cfg.wall_clock_limit_s;
    return b;
}

void validate(const ExperimentConfig& cfg, int n) {
    if (cfg.repeats < 1) throw ConfigError("repeats", "must be >= 1");
    if (cfg.workers < 1) throw ConfigError("workers", "must be >= 1");
    if (cfg.seed == 0) throw ConfigError("seed", "must be nonzero");
    if (cfg.algorithm == AlgorithmKind::mvhc || cfg.algorithm == AlgorithmKind::mvea) {
        if (cfg.r < 1 || cfg.r >= n)
            throw ConfigError("r", "need 1 <= r < n (n = " + std::to_string(n) + ")");
    }
    if (cfg.algorithm == AlgorithmKind::mvhc) {
        if (cfg.stability_threshold < 1) throw ConfigError("K", "must be >= 1");
        if (cfg.max_block_size < 1 ||
            static_cast<long long>(cfg.r) * cfg.max_block_size < n)
            throw ConfigError("max-block-size", "cap unattainable: r * cap < n");
    }
}

RunRecord execute_run(const ExperimentConfig& cfg, const ResolvedProblem& problem,
                      const SearchBudget& budget, std::uint64_t run_seed) {
    const auto t0 = std::chrono::steady_clock::now();
    SplitMix64 rng(run_seed);
    const auto objective = make_objective(cfg, problem);
    const BitVector start = BitVector::random(problem.n, rng);

    RunRecord record;
    record.seed = run_seed;
    switch (cfg.algorithm) {
        case AlgorithmKind::hc: {
            const auto outcome = hill_climb(
                [&](const BitVector& p) { return objective->evaluate(p); }, start,
                [](const BitVector& p) { return hamming1_neighborhood(p); }, budget,
                ImprovementPolicy::first_improvement);
            record.result.best_point = outcome.point;
            record.result.best_value = outcome.value;
            record.result.evaluations = objective->eval_count();
            record.result.iterations = outcome.moves;
            record.result.terminated_by = outcome.terminated_by;
            record.result.trajectory.push_back({1, outcome.start_value});
            if (outcome.moves > 0)
                record.result.trajectory.push_back({record.result.evaluations, outcome.value});
            break;
        }
        case AlgorithmKind::ea:
            record.result = one_plus_one_ea(*objective, start, budget, rng, cfg.target);
            break;
        case AlgorithmKind::mvea: {
            const MergingMapping m =
                random_merging_mapping(problem.n, cfg.r, cfg.map_mode, rng);
            MveaOptions opts;
            opts.redraw_mapping_each_step = cfg.mvea_redraw;
            opts.redraw_mode = cfg.map_mode;
            record.result = one_plus_one_mvea(*objective, m, start, budget, rng, cfg.target, opts);
            break;
        }
        case AlgorithmKind::mvhc: {
            MvhcOptions opts;
            opts.r = cfg.r;
            opts.mode = cfg.map_mode;
            opts.stability_threshold = cfg.stability_threshold;
            opts.workers = cfg.workers;
            // best-improvement scans keep reports identical across worker
            // counts; the first-improvement walk is a library-level choice
            opts.policy = mvp::ImprovementPolicy::best_improvement;
            opts.max_block_size = cfg.max_block_size;
            opts.restart = cfg.restart;
            opts.target = cfg.target;
            record.result = mvhc(*objective, start, opts, budget, rng);
            break;
        }
    }

    // decode a satisfying assignment when a CNF objective reached the
    // clause count
    if (problem.formula) {
        const int m = problem.formula->num_clauses();
        if (record.result.best_value >= m) {
            if (cfg.objective == ObjectiveKind::maxsat) {
                record.full_assignment = record.result.best_point.to_string();
            } else {
                const UpObjective probe(*problem.formula, problem.input_vars);
                const auto prop = probe.propagate(record.result.best_point);
                if (prop.status == PropagationStatus::fixpoint && prop.assignment.is_total())
                    record.full_assignment = prop.assignment.to_bitvector().to_string();
            }
        }
    }

    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    record.wall_seconds = dt.count();
    if (!cfg.record_trajectory) record.result.trajectory.clear();
    return record;
}

double mean_of(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

double median_of(std::vector<double> xs) {
    if (xs.empty()) return 0.0;
    std::sort(xs.begin(), xs.end());
    const std::size_t mid = xs.size() / 2;
    return xs.size() % 2 == 1 ? xs[mid] : 0.5 * (xs[mid - 1] + xs[mid]);
}

} // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    const ResolvedProblem problem = resolve_problem(config);
    validate(config, problem.n);
    const SearchBudget budget = resolve_budget(config, problem.n);

    ExperimentReport report;
    report.config = config;
    report.config.budget_stagnation = budget.max_stagnation;
    report.resolved_n = problem.n;
    if (problem.formula) report.clause_count = problem.formula->num_clauses();
    report.runs.resize(static_cast<std::size_t>(config.repeats));

    if (config.parallel_repeats && config.repeats > 1) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (int i = 0; i < config.repeats; ++i)
            report.runs[static_cast<std::size_t>(i)] =
                execute_run(config, problem, budget, config.seed + static_cast<std::uint64_t>(i));
    } else {
        for (int i = 0; i < config.repeats; ++i)
            report.runs[static_cast<std::size_t>(i)] =
                execute_run(config, problem, budget, config.seed + static_cast<std::uint64_t>(i));
    }

    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    report.total_seconds = dt.count();
    return report;
}

nlohmann::ordered_json report_to_json(const ExperimentReport& report) {
    using json = nlohmann::ordered_json;
    const auto& cfg = report.config;

    json config;
    config["objective"] = to_string(cfg.objective);
    config["cnf"] = cfg.cnf_path;
    config["input_vars"] = cfg.input_vars_path;
    config["n"] = report.resolved_n;
    config["algorithm"] = to_string(cfg.algorithm);
    config["r"] = cfg.r;
    config["map_mode"] = to_string(cfg.map_mode);
    config["K"] = cfg.stability_threshold;
    config["max_block_size"] = cfg.max_block_size;
    config["restart"] = cfg.restart;
    config["budget"] = {{"evaluations", cfg.budget_evaluations},
                        {"iterations", cfg.budget_iterations},
                        {"stagnation", cfg.budget_stagnation},
                        {"wall_clock_s", cfg.wall_clock_limit_s}};
    config["seed"] = cfg.seed;
    config["repeats"] = cfg.repeats;
    config["workers"] = cfg.workers;
    if (cfg.target)
        config["target"] = *cfg.target;
    else
        config["target"] = nullptr;
    config["parallel_repeats"] = cfg.parallel_repeats;
    config["mvea_redraw"] = cfg.mvea_redraw;
    config["record_trajectory"] = cfg.record_trajectory;
    if (report.clause_count) config["clauses"] = *report.clause_count;

    json runs = json::array();
    std::vector<double> evals;
    std::vector<double> run_seconds;
    for (const auto& run : report.runs) {
        json r;
        r["seed"] = run.seed;
        r["best_value"] = run.result.best_value;
        r["best_point"] = run.result.best_point.to_string();
        r["evaluations"] = run.result.evaluations;
        r["iterations"] = run.result.iterations;
        r["terminated_by"] = to_string(run.result.terminated_by);
        r["strong_extremum"] = run.result.strong_extremum;
        if (cfg.record_trajectory) {
            json traj = json::array();
            for (const auto& ev : run.result.trajectory) traj.push_back({ev.eval, ev.value});
            r["trajectory"] = std::move(traj);
        }
        if (run.full_assignment) r["full_assignment"] = *run.full_assignment;
        runs.push_back(std::move(r));
        evals.push_back(static_cast<double>(run.result.evaluations));
        run_seconds.push_back(run.wall_seconds);
    }

    json aggregate;
    aggregate["mean_evaluations"] = mean_of(evals);
    aggregate["median_evaluations"] = median_of(evals);
    double best = report.runs.empty() ? 0.0 : report.runs.front().result.best_value;
    for (const auto& run : report.runs) best = std::max(best, run.result.best_value);
    aggregate["best_value"] = best;
    if (cfg.target) aggregate["target_reached_runs"] = report.target_reached_runs();

    json timing;
    timing["total_seconds"] = report.total_seconds;
    timing["run_seconds"] = run_seconds;
    timing["mean_run_seconds"] = mean_of(run_seconds);
    timing["median_run_seconds"] = median_of(run_seconds);

    json out;
    out["schema_version"] = 1;
    out["config"] = std::move(config);
    out["runs"] = std::move(runs);
    out["aggregate"] = std::move(aggregate);
    out["timing"] = std::move(timing);
    return out;
}

std::string improvement_log_lines(const ExperimentReport& report) {
    std::ostringstream out;
    const std::string algo = to_string(report.config.algorithm);
    for (const auto& run : report.runs) {
        for (const auto& ev : run.result.trajectory) {
            nlohmann::ordered_json line;
            line["eval"] = ev.eval;
            line["value"] = ev.value;
            line["algo"] = algo;
            line["seed"] = run.seed;
            out << line.dump() << '\n';
        }
    }
    return out.str();
}

VerifyResult verify_solution(const CnfFormula& f, const std::string& assignment,
                             const std::vector<int>& input_vars) {
    for (char c : assignment)
        if (c != '0' && c != '1')
            throw std::invalid_argument("assignment must be a string of '0'/'1'");

    VerifyResult out;
    out.total = f.num_clauses();
    if (static_cast<int>(assignment.size()) == f.num_vars()) {
        const BitVector a = BitVector::from_string(assignment);
        out.satisfied = count_satisfied(f, a);
        out.full_assignment = assignment;
    } else if (!input_vars.empty() && assignment.size() == input_vars.size()) {
        PartialAssignment seed(f.num_vars());
        for (std::size_t i = 0; i < input_vars.size(); ++i)
            seed.assign(input_vars[i], assignment[i] == '1');
        const auto prop = unit_propagate(f, seed);
        out.satisfied = prop.satisfied_count;
        out.completed_by_propagation = true;
        if (prop.status == PropagationStatus::fixpoint && prop.assignment.is_total())
            out.full_assignment = prop.assignment.to_bitvector().to_string();
    } else {
        throw std::invalid_argument(
            "assignment length matches neither the variable count nor the input set");
    }
    out.satisfying = out.satisfied == out.total;
    return out;
}

} // namespace mvp
