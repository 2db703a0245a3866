#include "netevo/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace netevo {

using nlohmann::json;

std::string to_string(SweepVariable v) {
    return v == SweepVariable::LinkFailureProb ? "link_failure_prob" : "q";
}

SweepSpec failure_probability_sweep(const GaConfig& base) {
    return {SweepVariable::LinkFailureProb, {0.1, 0.01, 0.001, 0.0001, 0.00001}, 5, base};
}

SweepSpec population_size_sweep(const GaConfig& base) {
    GaConfig cfg = base;
    cfg.link_failure_prob = 0.01;
    return {SweepVariable::PopulationSizeQ, {3, 4, 5, 6, 7}, 5, cfg};
}

MeanSd mean_sd(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("mean_sd: no samples");
    MeanSd out;
    out.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - out.mean) * (x - out.mean);
        out.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
    return out;
}

RunOutcome summarize_run(std::uint64_t seed, int generation_budget,
                         std::vector<GenerationRecord> trace) {
    RunOutcome out;
    out.seed = seed;
    const auto conv = convergence_generation(trace);
    out.converged = conv.has_value();
    out.convergence_time = conv.value_or(generation_budget);
    for (const auto& r : trace) out.max_fitness = std::max(out.max_fitness, r.best_scores.fitness);
    if (!trace.empty()) {
        const NetworkScores& last = trace.back().best_scores;
        out.final_cost = last.cost;
        out.final_pleiotropy = last.pleiotropy;
        out.final_redundancy = last.redundancy;
    }
    out.trace = std::move(trace);
    return out;
}

SweepSummaryRow summarize_row(double value, int population_size, std::span<const RunOutcome> runs) {
    if (runs.empty()) throw std::invalid_argument("summarize_row: no runs");
    auto column = [&](auto field) {
        std::vector<double> xs;
        xs.reserve(runs.size());
        for (const RunOutcome& r : runs) xs.push_back(static_cast<double>(field(r)));
        return mean_sd(xs);
    };
    SweepSummaryRow row;
    row.value = value;
    row.population_size = population_size;
    row.runs = static_cast<int>(runs.size());
    row.unconverged_runs = static_cast<int>(
        std::count_if(runs.begin(), runs.end(), [](const RunOutcome& r) { return !r.converged; }));
    row.convergence_time = column([](const RunOutcome& r) { return r.convergence_time; });
    row.max_fitness = column([](const RunOutcome& r) { return r.max_fitness; });
    row.final_cost = column([](const RunOutcome& r) { return r.final_cost; });
    row.final_pleiotropy = column([](const RunOutcome& r) { return r.final_pleiotropy; });
    row.final_redundancy = column([](const RunOutcome& r) { return r.final_redundancy; });
    return row;
}

GaConfig config_for(const SweepSpec& spec, double value, int run_index) {
    GaConfig cfg = spec.base_config;
    if (spec.variable == SweepVariable::LinkFailureProb) {
        cfg.link_failure_prob = value;
    } else {
        cfg.q = static_cast<int>(std::lround(value));
    }
    cfg.seed = spec.base_config.seed + static_cast<std::uint64_t>(run_index);
    return cfg;
}

std::string value_label(SweepVariable variable, double value) {
    char buf[64];
    if (variable == SweepVariable::PopulationSizeQ) {
        std::snprintf(buf, sizeof buf, "%ld", std::lround(value));
    } else {
        std::snprintf(buf, sizeof buf, "%.6g", value);
    }
    return buf;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::filesystem::path trace_path(const std::filesystem::path& dir, SweepVariable variable,
                                 double value, int run) {
    return dir / "traces" / value_label(variable, value) / (std::to_string(run) + ".csv");
}

std::string fixed1(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f", x);
    return buf;
}

std::string full(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json mean_sd_json(const MeanSd& m) { return {{"mean", m.mean}, {"sd", m.sd}}; }

MeanSd mean_sd_from(const json& j) { return {j.at("mean").get<double>(), j.at("sd").get<double>()}; }

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, const std::optional<std::filesystem::path>& archive_dir) {
    if (spec.runs_per_value < 1) throw std::invalid_argument("run_sweep: runs_per_value must be >= 1");
    if (spec.values.empty()) throw std::invalid_argument("run_sweep: no values to sweep");

    SweepResult result;
    result.spec = spec;
    for (double value : spec.values) {
        std::vector<RunOutcome> outcomes;
        for (int r = 0; r < spec.runs_per_value; ++r) {
            const GaConfig cfg = config_for(spec, value, r);
            RunOutcome outcome = summarize_run(cfg.seed, cfg.generations, run(cfg));
            if (archive_dir)
                write_file(trace_path(*archive_dir, spec.variable, value, r),
                           trace_csv(cfg, outcome.trace));
            outcomes.push_back(std::move(outcome));
        }
        const GaConfig cfg = config_for(spec, value, 0);
        result.rows.push_back(summarize_row(value, population_size(cfg.q), outcomes));
        result.runs.push_back(std::move(outcomes));
    }
    return result;
}

std::string emit_tables(std::span<const SweepSummaryRow> rows, SweepVariable variable,
                        TableFormat format) {
    if (rows.empty()) throw std::invalid_argument("emit_tables: no rows");

    if (format == TableFormat::Json) {
        json out_rows = json::array();
        for (const auto& r : rows) {
            out_rows.push_back({{"value", r.value},
                                {"population_size", r.population_size},
                                {"runs", r.runs},
                                {"unconverged_runs", r.unconverged_runs},
                                {"convergence_time", mean_sd_json(r.convergence_time)},
                                {"max_fitness", mean_sd_json(r.max_fitness)},
                                {"final_cost", mean_sd_json(r.final_cost)},
                                {"final_pleiotropy", mean_sd_json(r.final_pleiotropy)},
                                {"final_redundancy", mean_sd_json(r.final_redundancy)}});
        }
        json doc = {{"variable", to_string(variable)}, {"rows", std::move(out_rows)}};
        return doc.dump(2) + "\n";
    }

    std::ostringstream out;
    if (variable == SweepVariable::PopulationSizeQ) {
        out << "population_size,q";
    } else {
        out << "link_failure_prob";
    }
    out << ",convergence_time_mean,convergence_time_sd,max_fitness_mean,max_fitness_sd,"
           "final_cost_mean,final_cost_sd,final_pleiotropy_mean,final_pleiotropy_sd,"
           "final_redundancy_mean,final_redundancy_sd,runs,unconverged_runs\n";
    for (const auto& r : rows) {
        if (variable == SweepVariable::PopulationSizeQ) {
            out << r.population_size << "," << value_label(variable, r.value);
        } else {
            out << value_label(variable, r.value);
        }
        for (const MeanSd* m : {&r.convergence_time, &r.max_fitness, &r.final_cost,
                                &r.final_pleiotropy, &r.final_redundancy})
            out << "," << fixed1(m->mean) << "," << fixed1(m->sd);
        out << "," << r.runs << "," << r.unconverged_runs << "\n";
    }
    return out.str();
}

std::vector<SweepSummaryRow> parse_summary_json(const std::string& text) {
    const json doc = json::parse(text);
    std::vector<SweepSummaryRow> rows;
    for (const json& j : doc.at("rows")) {
        SweepSummaryRow r;
        r.value = j.at("value").get<double>();
        r.population_size = j.at("population_size").get<int>();
        r.runs = j.at("runs").get<int>();
        r.unconverged_runs = j.at("unconverged_runs").get<int>();
        r.convergence_time = mean_sd_from(j.at("convergence_time"));
        r.max_fitness = mean_sd_from(j.at("max_fitness"));
        r.final_cost = mean_sd_from(j.at("final_cost"));
        r.final_pleiotropy = mean_sd_from(j.at("final_pleiotropy"));
        r.final_redundancy = mean_sd_from(j.at("final_redundancy"));
        rows.push_back(r);
    }
    return rows;
}

std::string trace_csv(const GaConfig& cfg, std::span<const GenerationRecord> records) {
    std::ostringstream out;
    out << "# netevo trace\n";
    out << "# seed: " << cfg.seed << "\n";
    out << "# config: " << config_to_json(cfg).dump() << "\n";
    out << "generation,best_fitness,best_cost,pleiotropy,redundancy,converged\n";
    for (const auto& r : records) {
        out << r.generation << "," << full(r.best_scores.fitness) << "," << full(r.best_scores.cost)
            << "," << full(r.best_scores.pleiotropy) << "," << full(r.best_scores.redundancy) << ","
            << (r.converged ? 1 : 0) << "\n";
    }
    return out.str();
}

void write_sweep_artifacts(const SweepResult& result, const std::filesystem::path& dir) {
    const SweepSpec& spec = result.spec;
    std::ostringstream header;
    header << "# netevo sweep: variable=" << to_string(spec.variable)
           << " runs_per_value=" << spec.runs_per_value << "\n";
    header << "# seed: " << spec.base_config.seed << "\n";
    header << "# config: " << config_to_json(spec.base_config).dump() << "\n";
    write_file(dir / "summary.csv",
               header.str() + emit_tables(result.rows, spec.variable, TableFormat::Csv));

    json summary = json::parse(emit_tables(result.rows, spec.variable, TableFormat::Json));
    summary["config"] = config_to_json(spec.base_config);
    summary["seed"] = spec.base_config.seed;
    summary["runs_per_value"] = spec.runs_per_value;
    summary["values"] = spec.values;
    write_file(dir / "summary.json", summary.dump(2) + "\n");

    for (std::size_t v = 0; v < spec.values.size() && v < result.runs.size(); ++v) {
        for (std::size_t r = 0; r < result.runs[v].size(); ++r) {
            const GaConfig cfg = config_for(spec, spec.values[v], static_cast<int>(r));
            write_file(trace_path(dir, spec.variable, spec.values[v], static_cast<int>(r)),
                       trace_csv(cfg, result.runs[v][r].trace));
        }
    }
}

namespace {

std::vector<double> average_ranks(std::span<const double> xs) {
    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> ranks(xs.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
        const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) return std::nullopt;
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / static_cast<double>(rx.size());
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / static_cast<double>(ry.size());
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace netevo
