#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mvp/experiment.hpp"

namespace {

int do_run(const mvp::ExperimentConfig& config, const std::string& out_path,
           const std::string& log_path) {
    const auto report = mvp::run_experiment(config);
    const auto j = mvp::report_to_json(report);

    if (out_path.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << '\n';
            return 1;
        }
        out << j.dump(2) << '\n';
    }
    if (!log_path.empty()) {
        std::ofstream log(log_path, std::ios::binary);
        if (!log) {
            std::cerr << "error: cannot write " << log_path << '\n';
            return 1;
        }
        log << mvp::improvement_log_lines(report);
    }
    if (config.target && report.target_reached_runs() == 0) return 2;
    return 0;
}

int do_verify(const std::string& cnf_path, const std::string& assignment,
              const std::string& input_vars_path) {
    const std::string text = mvp::read_text_file(cnf_path);
    const mvp::CnfFormula formula = mvp::parse_dimacs(text);
    std::vector<int> input_vars;
    if (!input_vars_path.empty())
        input_vars = mvp::parse_input_vars(mvp::read_text_file(input_vars_path));
    else
        input_vars = mvp::dimacs_input_vars(text);

    const auto result = mvp::verify_solution(formula, assignment, input_vars);

    nlohmann::ordered_json j;
    j["satisfied"] = result.satisfied;
    j["total"] = result.total;
    j["satisfying"] = result.satisfying;
    j["completed_by_propagation"] = result.completed_by_propagation;
    if (!result.full_assignment.empty()) j["full_assignment"] = result.full_assignment;
    std::cout << j.dump(2) << '\n';
    std::cerr << result.satisfied << '/' << result.total << " clauses satisfied\n";
    return result.satisfying ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mvp: pseudo-Boolean search over merged-variable spaces"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "INI/TOML config file with a [run] section; command-line flags win");

    // ---- run ----
    auto* run = app.add_subcommand("run", "run a search experiment and emit a JSON report");
    run->fallthrough(); // lets --config appear after the subcommand name

    mvp::ExperimentConfig config;
    std::string objective_name = "onemax";
    std::string algo_name = "mvhc";
    std::string map_mode_name = "uniform";
    std::string out_path;
    std::string log_path;
    double target_value = 0.0;
    bool no_trajectory = false;

    run->add_option("--objective", objective_name, "onemax|trap|maxsat|upsat")
        ->capture_default_str();
    run->add_option("--cnf", config.cnf_path, "DIMACS CNF path (maxsat/upsat)");
    run->add_option("--input-vars", config.input_vars_path,
                    "sidecar file of input variable indices (upsat)");
    run->add_option("--algo", algo_name, "hc|mvhc|ea|mvea")->capture_default_str();
    run->add_option("--n", config.n, "dimension for synthetic objectives");
    run->add_option("--r", config.r, "number of merged variables (mvhc/mvea)");
    run->add_option("--map-mode", map_mode_name, "occupancy|uniform")->capture_default_str();
    run->add_option("--K", config.stability_threshold,
                    "non-improving mapping draws before a point is declared strong")
        ->capture_default_str();
    run->add_option("--max-block-size", config.max_block_size,
                    "redraw mappings whose largest block exceeds this")
        ->capture_default_str();
    run->add_flag("--restart", config.restart, "distance-constrained restarts from the tabu archive");
    run->add_option("--budget-evals", config.budget_evaluations, "evaluation budget per run (0 = unlimited)")
        ->capture_default_str();
    run->add_option("--budget-iters", config.budget_iterations, "iteration budget per run (0 = unlimited)");
    run->add_option("--budget-stagnation", config.budget_stagnation,
                    "stagnation budget per run (0 = default 50*n)");
    run->add_option("--wall-clock", config.wall_clock_limit_s, "wall-clock limit per run, seconds");
    run->add_option("--seed", config.seed, "base seed; run i uses seed+i")->capture_default_str();
    run->add_option("--repeats", config.repeats, "independent runs")->capture_default_str();
    run->add_option("--workers", config.workers, "neighborhood-scan worker threads (mvhc)")
        ->capture_default_str();
    auto* target_opt = run->add_option("--target", target_value,
                                       "stop when this objective value is reached; exit 2 if no run does");
    run->add_flag("--parallel-repeats", config.parallel_repeats, "run repeats concurrently");
    run->add_flag("--mvea-redraw", config.mvea_redraw,
                  "redraw the mapping before every mvea mutation (experimental)");
    run->add_flag("--no-trajectory", no_trajectory, "omit improvement trajectories from the report");
    run->add_option("--out", out_path, "write the JSON report here instead of stdout");
    run->add_option("--log", log_path, "write improvement events as JSON lines");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "check an assignment against a DIMACS CNF");
    std::string v_cnf, v_assignment, v_input_vars;
    verify->add_option("--cnf", v_cnf, "DIMACS CNF path")->required();
    verify->add_option("--assignment", v_assignment,
                       "'0'/'1' string over all variables or over the input set")
        ->required();
    verify->add_option("--input-vars", v_input_vars, "sidecar file of input variable indices");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            config.objective = mvp::parse_objective_kind(objective_name);
            config.algorithm = mvp::parse_algorithm_kind(algo_name);
            config.map_mode = mvp::parse_mapping_mode(map_mode_name);
            config.record_trajectory = !no_trajectory;
            if (target_opt->count() > 0) config.target = target_value;
            return do_run(config, out_path, log_path);
        }
        return do_verify(v_cnf, v_assignment, v_input_vars);
    } catch (const mvp::ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
