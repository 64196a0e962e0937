#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gmpea/baselines.hpp"
#include "gmpea/gmpea.hpp"
#include "gmpea/metrics.hpp"

// Config-driven experiment matrices {algorithm x problem x seed}, results
// persistence (JSONL per run, aggregated CSV), plot-data emission and the
// population-size scaling study.

namespace gmpea {

struct ExperimentConfig {
    std::vector<std::string> algorithms;  // gmpea, gmpea-s, gmpea-l, cnsga2, ccmo
    std::vector<std::string> problems;
    std::vector<std::uint64_t> seeds;
    std::optional<std::size_t> eval_budget;
    std::optional<double> time_budget_s;
    std::size_t k_max = 0;  // optional generation cap alongside a budget
    std::size_t n = 100;
    // operator per suite prefix: lircmop / dtlz / wta -> "sbx" or "de"
    std::map<std::string, std::string> operators;
    std::string reference_algorithm;  // defaults to the first algorithm
    std::string output_dir = "out";
    std::size_t workers = 1;
    bool record_walltime = true;
    std::size_t igd_reference_points = 1000;
};

ExperimentConfig load_experiment_config(const std::string& path);

/// Throws listing every unknown algorithm/problem name and any invariant
/// breach before a single run starts.
void validate_config(const ExperimentConfig& cfg);

/// Dispatches one run; algorithm must be one of the five registered names.
RunResult run_algorithm(const std::string& algorithm, const ProblemDef& problem,
                        const RunConfig& cfg);

/// Operator used for a problem under this config (suite defaults: DE for
/// LIRCMOP, SBX elsewhere).
VariationOp operator_for(const ExperimentConfig& cfg, const std::string& problem);

/// Final-population metric of one run, persisted to summary.jsonl so the
/// results table can be rebuilt without re-running anything.
struct RunSummary {
    std::string algorithm;
    std::string problem;
    std::uint64_t seed = 0;
    std::string metric;  // "igd" or "hv"
    double value = 0.0;
};

std::string summaries_to_jsonl(const std::vector<RunSummary>& summaries);
std::vector<RunSummary> load_summaries(const std::string& path);

/// Mean/std per (algorithm, problem) plus the Wilcoxon mark against the
/// reference algorithm, in config order.
std::string aggregate_results(const ExperimentConfig& cfg,
                              const std::vector<RunSummary>& summaries);

struct ExperimentResult {
    std::vector<std::string> jsonl_paths;
    std::string summary_path;
    std::string csv_path;
    std::string csv_text;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Mean per-generation wall time per population size; column ratio gives
/// time(size)/time(sizes[0]). Sizes must be ascending. Timing runs execute
/// one at a time.
std::string scaling_study(const std::vector<std::string>& algorithms,
                          const std::string& problem,
                          const std::vector<std::size_t>& sizes,
                          std::size_t generations, std::uint64_t seed = 1);

/// Number of fronts produced by nondominated sorting of the population.
std::size_t rank_diagnostic(const Population& pop, bool use_cdp = true);

struct RunSeries {
    std::string algorithm;
    std::string problem;
    std::vector<GenRecord> history;
};

/// Long-format CSV {algorithm, problem, gen, metric, mean, std} across seeds.
/// Throws when series of one (algorithm, problem) group disagree on which
/// metrics they carry.
std::string emit_plotdata(const std::vector<RunSeries>& series);

}  // namespace gmpea
