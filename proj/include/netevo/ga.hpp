#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "netevo/config.hpp"
#include "netevo/graph.hpp"
#include "netevo/metrics.hpp"
#include "netevo/random.hpp"

namespace netevo {

struct GenerationRecord {
    int generation = 0;
    NetworkScores best_scores;
    std::string best_network_digest;
    std::vector<double> population_fitness;
    bool converged = false;

    bool operator==(const GenerationRecord&) const = default;
};

/// Relative tolerance for "same maximum fitness".
inline constexpr double kConvergenceTolerance = 1e-9;

bool same_fitness(double a, double b);

/// True once the last three best-fitness values agree pairwise.
bool converged_window(std::span<const double> best_history);

/// Working links fail with link_failure_prob (counter -> 1); failed links
/// repair with link_repair_prob (counter -> 0) or age by one step.
Network apply_failures(const Network& net, const GaConfig& cfg, Rng& rng);

/// Utilization-driven mutation. Below u_low it adds links_per_low_mutation
/// links; above u_high it either removes one working link or places one more
/// server (even odds); in between it returns the input unchanged.
/// Skipped operations append a line to `diagnostics` when given.
Network mutate(const Network& net, const GaConfig& cfg, Rng& rng,
               std::vector<std::string>* diagnostics = nullptr);

/// Child with nodes N_a u N_b. Links present in both parents are always
/// inherited; links present in only one are kept with crossover_keep_prob.
/// A shared link is inherited working if either parent's copy works.
/// Throws std::invalid_argument when the parents share no node ids or
/// disagree about a node with the same id.
Network crossover(const Network& a, const Network& b, const GaConfig& cfg, Rng& rng);

/// Indices of `scores` sorted best first: fitness descending, then cost
/// ascending, then genome digest ascending.
std::vector<std::size_t> rank_population(std::span<const Network> population,
                                         std::span<const NetworkScores> scores);

using MatingObserver =
    std::function<void(const Network& a, const Network& b, const Network& child)>;

struct StepResult {
    std::vector<Network> population;  // q parents followed by the children
    GenerationRecord record;
    std::size_t elite_index = 0;      // best genome of `population`
    std::vector<std::string> diagnostics;
};

/// One generation: score, keep the top q, breed one child per parent pair,
/// then run failures and mutation on the children only. `prior_best` holds
/// earlier best-fitness values (oldest first) for convergence detection.
StepResult step_generation(std::span<const Network> population, const GaConfig& cfg, Rng& rng,
                           int generation, std::span<const double> prior_best = {},
                           const MatingObserver& observer = {});

/// Owns one evolving population and its random stream.
class Engine {
public:
    Engine(GaConfig cfg, const Network& initial);

    const GenerationRecord& step(const MatingObserver& observer = {});

    int generation() const { return generation_; }
    bool finished() const { return generation_ >= cfg_.generations; }
    const GaConfig& config() const { return cfg_; }
    /// Validates and swaps in a new config; takes effect at the next step.
    void set_config(GaConfig cfg);

    std::span<const Network> population() const { return population_; }
    const Network& elite() const { return population_.at(elite_index_); }
    const std::vector<GenerationRecord>& records() const { return records_; }
    const std::vector<std::string>& diagnostics() const { return diagnostics_; }

    nlohmann::json checkpoint() const;
    static Engine restore(const nlohmann::json& doc);

private:
    Engine() = default;

    GaConfig cfg_;
    Rng rng_;
    std::vector<Network> population_;
    std::size_t elite_index_ = 0;
    std::vector<GenerationRecord> records_;
    std::vector<double> best_history_;
    std::vector<std::string> diagnostics_;
    int generation_ = 0;
};

/// Seeds the population and runs cfg.generations generations. Convergence is
/// recorded but never stops the run.
std::vector<GenerationRecord> run(const GaConfig& cfg, const Network& initial,
                                  const MatingObserver& observer = {});

/// Places the initial network from cfg.model and cfg.seed, then runs.
std::vector<GenerationRecord> run(const GaConfig& cfg);
Network initial_network(const GaConfig& cfg);

/// Generation of the first converged record, or nullopt.
std::optional<int> convergence_generation(std::span<const GenerationRecord> records);

nlohmann::json scores_to_json(const NetworkScores& s);
NetworkScores scores_from_json(const nlohmann::json& j);
nlohmann::json record_to_json(const GenerationRecord& r);
GenerationRecord record_from_json(const nlohmann::json& j);

}  // namespace netevo
