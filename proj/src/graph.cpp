#include "netevo/graph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "digest.hpp"
#include "netevo/random.hpp"

namespace netevo {

EdgeKey key_of(NodeId a, NodeId b) {
    return a < b ? EdgeKey{a, b} : EdgeKey{b, a};
}

std::string to_string(NodeKind kind) { return kind == NodeKind::Client ? "C" : "S"; }

std::string to_string(EdgeKind kind) {
    return kind == EdgeKind::ClientClient ? "client_client" : "client_server";
}

std::string to_string(Health state) { return state == Health::Working ? "working" : "failed"; }

NodeKind node_kind_from_string(const std::string& s) {
    if (s == "C") return NodeKind::Client;
    if (s == "S") return NodeKind::Server;
    throw std::invalid_argument("unknown node kind '" + s + "'");
}

EdgeKind edge_kind_from_string(const std::string& s) {
    if (s == "client_client") return EdgeKind::ClientClient;
    if (s == "client_server") return EdgeKind::ClientServer;
    throw std::invalid_argument("unknown edge kind '" + s + "'");
}

Health health_from_string(const std::string& s) {
    if (s == "working") return Health::Working;
    if (s == "failed") return Health::Failed;
    throw std::invalid_argument("unknown state '" + s + "'");
}

double euclidean_weight(GridPosition a, GridPosition b) {
    if (a == b) throw std::invalid_argument("euclidean_weight: coincident positions");
    return std::hypot(static_cast<double>(a.x - b.x), static_cast<double>(a.y - b.y));
}

Edge make_edge(const Node& a, const Node& b, double failure_rate) {
    if (a.id == b.id) throw std::invalid_argument("make_edge: self-loop");
    if (a.kind == NodeKind::Server && b.kind == NodeKind::Server)
        throw std::invalid_argument("make_edge: server-server links are not part of the model");

    Edge e;
    e.weight = euclidean_weight(a.pos, b.pos);
    e.failure_rate = failure_rate;
    if (a.kind == NodeKind::Client && b.kind == NodeKind::Client) {
        e.kind = EdgeKind::ClientClient;
        e.from = std::min(a.id, b.id);
        e.to = std::max(a.id, b.id);
    } else {
        e.kind = EdgeKind::ClientServer;
        e.from = a.kind == NodeKind::Client ? a.id : b.id;
        e.to = a.kind == NodeKind::Client ? b.id : a.id;
    }
    return e;
}

namespace {

void check_health(Health state, int steps, const std::string& what) {
    if (steps < 0) throw std::invalid_argument(what + ": negative steps_since_failure");
    if ((state == Health::Working) != (steps == 0))
        throw std::invalid_argument(what + ": state must be working iff steps_since_failure is 0");
}

void check_probability(double p, const std::string& what) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(what + ": failure_rate outside [0,1]");
}

}  // namespace

Network::Network(std::vector<Node> nodes, std::vector<Edge> edges, int generation_born)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), generation_born_(generation_born) {
    std::sort(nodes_.begin(), nodes_.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return key_of(a) < key_of(b); });

    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        const std::string what = "node " + std::to_string(n.id.value);
        if (i > 0 && nodes_[i - 1].id == n.id) throw std::invalid_argument(what + ": duplicate id");
        if (!(n.traffic >= 0.0)) throw std::invalid_argument(what + ": negative traffic");
        check_probability(n.failure_rate, what);
        check_health(n.state, n.steps_since_failure, what);
    }

    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        const std::string what =
            "edge " + std::to_string(e.from.value) + "-" + std::to_string(e.to.value);
        if (e.from == e.to) throw std::invalid_argument(what + ": self-loop");
        if (i > 0 && key_of(edges_[i - 1]) == key_of(e))
            throw std::invalid_argument(what + ": duplicate link");
        const Node* a = find(e.from);
        const Node* b = find(e.to);
        if (!a || !b) throw std::invalid_argument(what + ": endpoint not in node set");
        if (a->kind == NodeKind::Server && b->kind == NodeKind::Server)
            throw std::invalid_argument(what + ": server-server link");
        const EdgeKind expected = (a->kind == NodeKind::Client && b->kind == NodeKind::Client)
                                      ? EdgeKind::ClientClient
                                      : EdgeKind::ClientServer;
        if (e.kind != expected) throw std::invalid_argument(what + ": kind does not match endpoints");
        if (e.kind == EdgeKind::ClientServer && a->kind != NodeKind::Client)
            throw std::invalid_argument(what + ": client_server link must be oriented client->server");
        if (!(e.weight > 0.0) || !std::isfinite(e.weight))
            throw std::invalid_argument(what + ": weight must be positive and finite");
        check_probability(e.failure_rate, what);
        check_health(e.state, e.steps_since_failure, what);
    }
}

std::size_t Network::client_count() const {
    return static_cast<std::size_t>(std::count_if(
        nodes_.begin(), nodes_.end(), [](const Node& n) { return n.kind == NodeKind::Client; }));
}

std::size_t Network::server_count() const { return nodes_.size() - client_count(); }

std::size_t Network::working_edge_count() const {
    return static_cast<std::size_t>(
        std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.working(); }));
}

const Node* Network::find(NodeId id) const {
    auto idx = index_of(id);
    return idx ? &nodes_[*idx] : nullptr;
}

std::optional<std::size_t> Network::index_of(NodeId id) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                               [](const Node& n, NodeId v) { return n.id < v; });
    if (it == nodes_.end() || it->id != id) return std::nullopt;
    return static_cast<std::size_t>(it - nodes_.begin());
}

const Edge* Network::find_edge(NodeId a, NodeId b) const {
    const EdgeKey k = key_of(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), k,
                               [](const Edge& e, const EdgeKey& v) { return key_of(e) < v; });
    if (it == edges_.end() || key_of(*it) != k) return nullptr;
    return &*it;
}

Network Network::with_edges(std::vector<Edge> edges) const {
    return Network(nodes_, std::move(edges), generation_born_);
}

Network Network::with_nodes_and_edges(std::vector<Node> nodes, std::vector<Edge> edges) const {
    return Network(std::move(nodes), std::move(edges), generation_born_);
}

Network Network::reborn(int generation) const {
    Network copy = *this;
    copy.generation_born_ = generation;
    return copy;
}

std::string Network::digest() const {
    // generation_born is bookkeeping, not genome content.
    detail::Fnv1a h;
    for (const Node& n : nodes_) {
        h.add(n.id.value);
        h.add(static_cast<int>(n.kind));
        h.add(n.pos.x);
        h.add(n.pos.y);
        h.add(n.traffic);
        h.add(n.failure_rate);
        h.add(static_cast<int>(n.state));
        h.add(n.steps_since_failure);
    }
    h.add(std::uint64_t{0xEDCEu});
    for (const Edge& e : edges_) {
        h.add(e.from.value);
        h.add(e.to.value);
        h.add(static_cast<int>(e.kind));
        h.add(e.weight);
        h.add(e.failure_rate);
        h.add(static_cast<int>(e.state));
        h.add(e.steps_since_failure);
    }
    return h.hex();
}

NodeId grid_id(GridPosition pos, int grid_width) {
    return NodeId{static_cast<std::uint32_t>(pos.y) * static_cast<std::uint32_t>(grid_width) +
                  static_cast<std::uint32_t>(pos.x)};
}

namespace {

bool spaced(GridPosition p, std::span<const GridPosition> placed, double min_spacing) {
    for (const GridPosition& q : placed) {
        const double dx = p.x - q.x;
        const double dy = p.y - q.y;
        if (dx * dx + dy * dy < min_spacing * min_spacing) return false;
        if (p == q) return false;
    }
    return true;
}

std::optional<GridPosition> draw_position(std::span<const GridPosition> placed,
                                          const ModelParams& params, Rng& rng) {
    std::uniform_int_distribution<int> xs(0, params.grid_width - 1);
    std::uniform_int_distribution<int> ys(0, params.grid_height - 1);
    for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
        GridPosition p{xs(rng), ys(rng)};
        if (spaced(p, placed, params.min_spacing)) return p;
    }
    return std::nullopt;
}

}  // namespace

Network place_initial(const ModelParams& params, Rng& rng) {
    if (params.n_clients < 0 || params.n_servers < 0)
        throw std::invalid_argument("place_initial: negative node count");
    if (params.grid_width <= 0 || params.grid_height <= 0)
        throw std::invalid_argument("place_initial: empty grid");
    if (!(params.t_max > 0.0) || !(params.t_s > 0.0))
        throw std::invalid_argument("place_initial: t_max and t_s must be positive");

    const int total = params.n_clients + params.n_servers;
    std::vector<GridPosition> placed;
    placed.reserve(static_cast<std::size_t>(total));
    std::vector<Node> nodes;
    nodes.reserve(static_cast<std::size_t>(total));

    std::uniform_real_distribution<double> traffic(0.0, params.t_max);
    for (int i = 0; i < total; ++i) {
        auto pos = draw_position(placed, params, rng);
        if (!pos) {
            std::ostringstream msg;
            msg << "grid too dense: could not place node " << i + 1 << " of " << total << " on a "
                << params.grid_width << "x" << params.grid_height << " grid at spacing "
                << params.min_spacing << " after " << kPlacementAttempts << " attempts";
            throw PlacementError(msg.str());
        }
        placed.push_back(*pos);

        Node n;
        n.id = grid_id(*pos, params.grid_width);
        n.pos = *pos;
        if (i < params.n_clients) {
            n.kind = NodeKind::Client;
            double t = 0.0;
            while (t <= 0.0) t = traffic(rng);
            n.traffic = t;
        } else {
            n.kind = NodeKind::Server;
            n.traffic = params.t_s;
        }
        nodes.push_back(n);
    }
    return Network(std::move(nodes), {}, 0);
}

std::optional<GridPosition> sample_free_position(const Network& net, const ModelParams& params,
                                                 Rng& rng) {
    std::vector<GridPosition> placed;
    placed.reserve(net.node_count());
    for (const Node& n : net.nodes()) placed.push_back(n.pos);
    return draw_position(placed, params, rng);
}

}  // namespace netevo
