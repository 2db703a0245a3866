#include "netevo/config.hpp"

#include <charconv>
#include <cmath>

namespace netevo {

using nlohmann::json;

namespace {

std::string join(const std::vector<FieldError>& errors) {
    std::string out = "invalid config:";
    for (const auto& e : errors) out += " " + e.field + ": " + e.message + ";";
    out.pop_back();
    return out;
}

void check_prob(std::vector<FieldError>& out, const char* field, double p) {
    if (!(p >= 0.0 && p <= 1.0)) out.push_back({field, "must lie in [0, 1]"});
}

}  // namespace

ConfigError::ConfigError(std::vector<FieldError> errors)
    : std::invalid_argument(join(errors)), errors_(std::move(errors)) {}

std::vector<FieldError> validate(const GaConfig& cfg) {
    std::vector<FieldError> out;
    if (cfg.q < 2) out.push_back({"q", "must be at least 2"});
    if (cfg.q > 1000) out.push_back({"q", "must be at most 1000"});
    if (cfg.generations < 0) out.push_back({"generations", "must be non-negative"});
    check_prob(out, "link_failure_prob", cfg.link_failure_prob);
    check_prob(out, "link_repair_prob", cfg.link_repair_prob);
    check_prob(out, "crossover_keep_prob", cfg.crossover_keep_prob);
    check_prob(out, "server_link_bias", cfg.server_link_bias);
    if (!(cfg.u_low > 0.0)) out.push_back({"u_low", "must be positive"});
    if (!(cfg.u_low < cfg.u_high)) out.push_back({"u_low", "must be less than u_high"});
    if (cfg.links_per_low_mutation < 0)
        out.push_back({"links_per_low_mutation", "must be non-negative"});

    const ModelParams& m = cfg.model;
    if (m.n_clients < 0) out.push_back({"n_clients", "must be non-negative"});
    if (m.n_servers < 1) out.push_back({"n_servers", "must be at least 1"});
    if (m.grid_width < 1) out.push_back({"grid_width", "must be positive"});
    if (m.grid_height < 1) out.push_back({"grid_height", "must be positive"});
    if (!(m.min_spacing >= 0.0)) out.push_back({"min_spacing", "must be non-negative"});
    if (!(m.t_max > 0.0)) out.push_back({"t_max", "must be positive"});
    if (!(m.t_s > 0.0)) out.push_back({"t_s", "must be positive"});
    return out;
}

void require_valid(const GaConfig& cfg) {
    auto errors = validate(cfg);
    if (!errors.empty()) throw ConfigError(std::move(errors));
}

json config_to_json(const GaConfig& cfg) {
    return {{"q", cfg.q},
            {"generations", cfg.generations},
            {"link_failure_prob", cfg.link_failure_prob},
            {"link_repair_prob", cfg.link_repair_prob},
            {"u_low", cfg.u_low},
            {"u_high", cfg.u_high},
            {"links_per_low_mutation", cfg.links_per_low_mutation},
            {"seed", cfg.seed},
            {"crossover_keep_prob", cfg.crossover_keep_prob},
            {"server_link_bias", cfg.server_link_bias},
            {"n_clients", cfg.model.n_clients},
            {"n_servers", cfg.model.n_servers},
            {"grid_width", cfg.model.grid_width},
            {"grid_height", cfg.model.grid_height},
            {"min_spacing", cfg.model.min_spacing},
            {"t_max", cfg.model.t_max},
            {"t_s", cfg.model.t_s}};
}

namespace {

template <class T>
void read(const json& v, const std::string& key, T& dst, std::vector<FieldError>& errors) {
    if constexpr (std::is_floating_point_v<T>) {
        if (!v.is_number()) {
            errors.push_back({key, "expected a number"});
            return;
        }
        dst = v.get<T>();
    } else if constexpr (std::is_unsigned_v<T>) {
        if (!v.is_number_unsigned()) {
            errors.push_back({key, "expected a non-negative integer"});
            return;
        }
        dst = v.get<T>();
    } else {
        if (!v.is_number_integer()) {
            errors.push_back({key, "expected an integer"});
            return;
        }
        dst = v.get<T>();
    }
}

}  // namespace

GaConfig apply_patch(const GaConfig& base, const json& patch) {
    if (!patch.is_object()) throw ConfigError(std::vector<FieldError>{{"config", "expected a JSON object"}});
    GaConfig cfg = base;
    std::vector<FieldError> errors;
    for (const auto& [key, v] : patch.items()) {
        if (key == "q") read(v, key, cfg.q, errors);
        else if (key == "generations") read(v, key, cfg.generations, errors);
        else if (key == "link_failure_prob") read(v, key, cfg.link_failure_prob, errors);
        else if (key == "link_repair_prob") read(v, key, cfg.link_repair_prob, errors);
        else if (key == "u_low") read(v, key, cfg.u_low, errors);
        else if (key == "u_high") read(v, key, cfg.u_high, errors);
        else if (key == "links_per_low_mutation") read(v, key, cfg.links_per_low_mutation, errors);
        else if (key == "seed") read(v, key, cfg.seed, errors);
        else if (key == "crossover_keep_prob") read(v, key, cfg.crossover_keep_prob, errors);
        else if (key == "server_link_bias") read(v, key, cfg.server_link_bias, errors);
        else if (key == "n_clients") read(v, key, cfg.model.n_clients, errors);
        else if (key == "n_servers") read(v, key, cfg.model.n_servers, errors);
        else if (key == "grid_width") read(v, key, cfg.model.grid_width, errors);
        else if (key == "grid_height") read(v, key, cfg.model.grid_height, errors);
        else if (key == "min_spacing") read(v, key, cfg.model.min_spacing, errors);
        else if (key == "t_max") read(v, key, cfg.model.t_max, errors);
        else if (key == "t_s") read(v, key, cfg.model.t_s, errors);
        else errors.push_back({key, "unknown field"});
    }
    if (!errors.empty()) throw ConfigError(std::move(errors));
    return cfg;
}

GaConfig config_from_json(const json& doc) { return apply_patch(GaConfig{}, doc); }

double parse_probability(const std::string& text) {
    std::string s = text;
    bool percent = false;
    if (!s.empty() && s.back() == '%') {
        percent = true;
        s.pop_back();
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value))
        throw std::invalid_argument("not a probability: '" + text + "'");
    if (percent) value /= 100.0;
    if (value < 0.0 || value > 1.0)
        throw std::invalid_argument("probability out of range: '" + text + "'");
    return value;
}

}  // namespace netevo
