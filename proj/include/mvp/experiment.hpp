#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mvp/cnf.hpp"
#include "mvp/search.hpp"

namespace mvp {

enum class ObjectiveKind { onemax, trap, maxsat, upsat };
enum class AlgorithmKind { hc, mvhc, ea, mvea };

std::string to_string(ObjectiveKind k);
std::string to_string(AlgorithmKind k);
std::string to_string(MappingMode m);
ObjectiveKind parse_objective_kind(const std::string& s);
AlgorithmKind parse_algorithm_kind(const std::string& s);
MappingMode parse_mapping_mode(const std::string& s);

/// Invalid configuration; carries the offending field name.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct ExperimentConfig {
    ObjectiveKind objective = ObjectiveKind::onemax;
    std::string cnf_path;        // maxsat/upsat
    std::string input_vars_path; // upsat; falls back to `c input` lines, then all variables
    int n = 0;                   // synthetic objectives

    AlgorithmKind algorithm = AlgorithmKind::mvhc;
    int r = 0;
    MappingMode map_mode = MappingMode::uniform;
    int stability_threshold = 10; // K
    int max_block_size = 20;
    bool restart = false;

    std::uint64_t budget_evaluations = 1000000;
    std::uint64_t budget_iterations = 0; // 0 = unlimited
    std::uint64_t budget_stagnation = 0; // 0 = default 50*n
    double wall_clock_limit_s = 0.0;     // 0 = unlimited

    std::uint64_t seed = 1;
    int repeats = 1;
    int workers = 1;
    std::optional<double> target;

    bool parallel_repeats = false;
    bool mvea_redraw = false;
    bool record_trajectory = true;
};

struct RunRecord {
    std::uint64_t seed = 0;
    SearchResult result;
    double wall_seconds = 0.0;
    std::optional<std::string> full_assignment; // satisfying assignment, when one was found
};

struct ExperimentReport {
    ExperimentConfig config; // resolved (defaults filled in)
    int resolved_n = 0;
    std::optional<int> clause_count; // CNF-backed objectives
    std::vector<RunRecord> runs;
    double total_seconds = 0.0;

    int target_reached_runs() const;
};

/// Run `repeats` independent searches with seeds seed, seed+1, ...
/// Throws ConfigError on an invalid configuration.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Full report, wall-clock numbers isolated under the single "timing" key;
/// everything else is byte-stable for a fixed config and workers=1.
nlohmann::ordered_json report_to_json(const ExperimentReport& report);

/// Improvement events as JSON lines: {"eval":..,"value":..,"algo":..,"seed":..}.
std::string improvement_log_lines(const ExperimentReport& report);

struct VerifyResult {
    int satisfied = 0;
    int total = 0;
    bool satisfying = false;
    bool completed_by_propagation = false;
    std::string full_assignment; // empty when propagation did not complete
};

/// Check an assignment string against a formula. The string must cover
/// either every variable, or exactly the declared input set (unit
/// propagation then completes it).
VerifyResult verify_solution(const CnfFormula& f, const std::string& assignment,
                             const std::vector<int>& input_vars = {});

/// Whole-file reader used by the CLI and tests.
std::string read_text_file(const std::string& path);

} // namespace mvp
