#include "netevo/network_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace netevo {

using nlohmann::json;

json network_to_json(const Network& net) {
    json nodes = json::array();
    for (const Node& n : net.nodes()) {
        nodes.push_back({{"id", n.id.value},
                         {"kind", to_string(n.kind)},
                         {"x", n.pos.x},
                         {"y", n.pos.y},
                         {"traffic", n.traffic},
                         {"failure_rate", n.failure_rate},
                         {"state", to_string(n.state)},
                         {"steps_since_failure", n.steps_since_failure}});
    }
    json edges = json::array();
    for (const Edge& e : net.edges()) {
        edges.push_back({{"from", e.from.value},
                         {"to", e.to.value},
                         {"kind", to_string(e.kind)},
                         {"weight", e.weight},
                         {"failure_rate", e.failure_rate},
                         {"state", to_string(e.state)},
                         {"steps_since_failure", e.steps_since_failure}});
    }
    return {{"format", kNetworkFormat},
            {"version", kNetworkFormatVersion},
            {"generation_born", net.generation_born()},
            {"nodes", std::move(nodes)},
            {"edges", std::move(edges)}};
}

Network network_from_json(const json& doc) {
    try {
        if (doc.at("format").get<std::string>() != kNetworkFormat)
            throw std::invalid_argument("not a network document");
        const int version = doc.at("version").get<int>();
        if (version != kNetworkFormatVersion)
            throw std::invalid_argument("unsupported network format version " +
                                        std::to_string(version));

        std::vector<Node> nodes;
        for (const json& j : doc.at("nodes")) {
            Node n;
            n.id = NodeId{j.at("id").get<std::uint32_t>()};
            n.kind = node_kind_from_string(j.at("kind").get<std::string>());
            n.pos = {j.at("x").get<int>(), j.at("y").get<int>()};
            n.traffic = j.at("traffic").get<double>();
            n.failure_rate = j.at("failure_rate").get<double>();
            n.state = health_from_string(j.at("state").get<std::string>());
            n.steps_since_failure = j.at("steps_since_failure").get<int>();
            nodes.push_back(n);
        }
        std::vector<Edge> edges;
        for (const json& j : doc.at("edges")) {
            Edge e;
            e.from = NodeId{j.at("from").get<std::uint32_t>()};
            e.to = NodeId{j.at("to").get<std::uint32_t>()};
            e.kind = edge_kind_from_string(j.at("kind").get<std::string>());
            e.weight = j.at("weight").get<double>();
            e.failure_rate = j.at("failure_rate").get<double>();
            e.state = health_from_string(j.at("state").get<std::string>());
            e.steps_since_failure = j.at("steps_since_failure").get<int>();
            edges.push_back(e);
        }
        return Network(std::move(nodes), std::move(edges), doc.at("generation_born").get<int>());
    } catch (const json::exception& ex) {
        throw std::invalid_argument(std::string("malformed network document: ") + ex.what());
    }
}

std::string network_to_string(const Network& net) { return network_to_json(net).dump(2) + "\n"; }

Network network_from_string(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& ex) {
        throw std::invalid_argument(std::string("malformed network document: ") + ex.what());
    }
    return network_from_json(doc);
}

void save_network(const Network& net, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << network_to_string(net);
}

Network load_network(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return network_from_string(buf.str());
}

}  // namespace netevo
