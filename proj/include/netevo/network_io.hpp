#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "netevo/graph.hpp"

namespace netevo {

inline constexpr const char* kNetworkFormat = "netevo-network";
inline constexpr int kNetworkFormatVersion = 1;

// Versioned JSON document. Doubles are written in shortest round-trip form,
// so load(save(x)) == x on every field.
nlohmann::json network_to_json(const Network& net);
Network network_from_json(const nlohmann::json& doc);

std::string network_to_string(const Network& net);
Network network_from_string(const std::string& text);

void save_network(const Network& net, const std::filesystem::path& path);
Network load_network(const std::filesystem::path& path);

}  // namespace netevo
