#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "netevo/config.hpp"
#include "netevo/ga.hpp"

namespace netevo {

enum class SweepVariable { LinkFailureProb, PopulationSizeQ };

std::string to_string(SweepVariable v);

struct SweepSpec {
    SweepVariable variable = SweepVariable::LinkFailureProb;
    std::vector<double> values;
    int runs_per_value = 5;
    GaConfig base_config;
};

/// Link failure probabilities 10%, 1%, 0.1%, 0.01%, 0.001%.
SweepSpec failure_probability_sweep(const GaConfig& base);
/// q = 3..7, i.e. population sizes 6, 10, 15, 21, 28, at 1% link failure.
SweepSpec population_size_sweep(const GaConfig& base);

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;  // sample standard deviation, 0 for a single sample
};

MeanSd mean_sd(std::span<const double> xs);

struct RunOutcome {
    std::uint64_t seed = 0;
    int convergence_time = 0;  // generation budget when the run never converged
    bool converged = false;
    double max_fitness = 0.0;
    double final_cost = 0.0;
    double final_pleiotropy = 0.0;
    double final_redundancy = 0.0;
    std::vector<GenerationRecord> trace;
};

/// Summarizes one finished run; "final" values come from the elite of the
/// last generation.
RunOutcome summarize_run(std::uint64_t seed, int generation_budget,
                         std::vector<GenerationRecord> trace);

struct SweepSummaryRow {
    double value = 0.0;
    int population_size = 0;
    int runs = 0;
    int unconverged_runs = 0;
    MeanSd convergence_time;
    MeanSd max_fitness;
    MeanSd final_cost;
    MeanSd final_pleiotropy;
    MeanSd final_redundancy;
};

SweepSummaryRow summarize_row(double value, int population_size, std::span<const RunOutcome> runs);

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepSummaryRow> rows;
    std::vector<std::vector<RunOutcome>> runs;  // [value index][run index]
};

/// The config used for run `run_index` of swept value `value`; its seed is
/// base seed + run index.
GaConfig config_for(const SweepSpec& spec, double value, int run_index);

/// Runs every (value, run) pair. With `archive_dir`, each trace is written
/// to traces/<value>/<run>.csv as soon as its run finishes, so a failing run
/// leaves the completed traces behind.
SweepResult run_sweep(const SweepSpec& spec,
                      const std::optional<std::filesystem::path>& archive_dir = std::nullopt);

enum class TableFormat { Csv, Json };

/// Summary table. CSV uses one decimal place; JSON keeps full precision.
std::string emit_tables(std::span<const SweepSummaryRow> rows, SweepVariable variable,
                        TableFormat format);
std::vector<SweepSummaryRow> parse_summary_json(const std::string& text);

/// Per-generation trace with a commented config header.
std::string trace_csv(const GaConfig& cfg, std::span<const GenerationRecord> records);

/// Writes summary.csv, summary.json and traces/ under `dir`.
void write_sweep_artifacts(const SweepResult& result, const std::filesystem::path& dir);

std::string value_label(SweepVariable variable, double value);

/// Spearman rank correlation with average ranks for ties. nullopt when either
/// series is constant or the lengths differ.
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

}  // namespace netevo
