#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "netevo/graph.hpp"

namespace netevo {

struct GaConfig {
    int q = 5;
    int generations = 75;
    double link_failure_prob = 0.01;
    double link_repair_prob = 0.1;
    double u_low = 0.75;
    double u_high = 0.85;
    int links_per_low_mutation = 3;
    std::uint64_t seed = 0;
    double crossover_keep_prob = 0.5;
    // Chance that an added link joins an unserved client to a server
    // instead of a uniformly drawn legal pair.
    double server_link_bias = 0.8;
    ModelParams model;

    bool operator==(const GaConfig&) const = default;
};

/// (q^2 - q) / 2 + q: the q parents plus one child per unordered pair.
constexpr int population_size(int q) { return (q * q - q) / 2 + q; }

struct FieldError {
    std::string field;
    std::string message;
};

class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(std::vector<FieldError> errors);
    const std::vector<FieldError>& errors() const { return errors_; }

private:
    std::vector<FieldError> errors_;
};

std::vector<FieldError> validate(const GaConfig& cfg);
void require_valid(const GaConfig& cfg);

/// Flat object with one key per field (model parameters included).
nlohmann::json config_to_json(const GaConfig& cfg);

/// Overlays the keys of `patch` onto `base`. Unknown keys and type errors
/// throw ConfigError; the result is not validated.
GaConfig apply_patch(const GaConfig& base, const nlohmann::json& patch);
GaConfig config_from_json(const nlohmann::json& doc);

/// Accepts "0.01" and "1%" alike.
double parse_probability(const std::string& text);

}  // namespace netevo
