#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace netevo {

/// Identifier of a placed node. The value is the node's grid cell index
/// (y * grid_width + x), so an id doubles as a grid reference and stays the
/// same in every genome derived from the same placement.
struct NodeId {
    std::uint32_t value = 0;
    auto operator<=>(const NodeId&) const = default;
};

struct GridPosition {
    int x = 0;
    int y = 0;
    bool operator==(const GridPosition&) const = default;
};

enum class NodeKind { Client, Server };
enum class EdgeKind { ClientClient, ClientServer };
enum class Health { Working, Failed };

struct Node {
    NodeId id;
    NodeKind kind = NodeKind::Client;
    GridPosition pos;
    double traffic = 0.0;  // requested T_i for clients, capacity T_s for servers
    double failure_rate = 0.0;
    Health state = Health::Working;
    int steps_since_failure = 0;

    bool operator==(const Node&) const = default;
};

/// A link. ClientServer edges are stored oriented client -> server;
/// ClientClient edges are stored with from < to.
struct Edge {
    NodeId from;
    NodeId to;
    EdgeKind kind = EdgeKind::ClientClient;
    double weight = 0.0;
    double failure_rate = 0.0;
    Health state = Health::Working;
    int steps_since_failure = 0;

    bool working() const { return state == Health::Working; }
    bool operator==(const Edge&) const = default;
};

/// Unordered endpoint pair used to key edges.
struct EdgeKey {
    NodeId lo;
    NodeId hi;
    auto operator<=>(const EdgeKey&) const = default;
};

EdgeKey key_of(NodeId a, NodeId b);
inline EdgeKey key_of(const Edge& e) { return key_of(e.from, e.to); }

std::string to_string(NodeKind kind);
std::string to_string(EdgeKind kind);
std::string to_string(Health state);
NodeKind node_kind_from_string(const std::string& s);
EdgeKind edge_kind_from_string(const std::string& s);
Health health_from_string(const std::string& s);

/// Parameters of the placement grid and the traffic model.
struct ModelParams {
    int n_clients = 20;
    int n_servers = 3;
    int grid_width = 100;
    int grid_height = 100;
    double min_spacing = 5.0;
    double t_max = 10.0;   // clients request traffic in (0, t_max)
    double t_s = 100.0;    // capacity of every server
};

class PlacementError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Attempts allowed per node before placement gives up.
inline constexpr int kPlacementAttempts = 1000;

double euclidean_weight(GridPosition a, GridPosition b);

/// Builds a link between two nodes with Euclidean weight and canonical
/// orientation. Throws std::invalid_argument for server-server pairs and
/// self-loops.
Edge make_edge(const Node& a, const Node& b, double failure_rate = 0.0);

/// One genome: an immutable node set plus edge set with E subset of N x N.
class Network {
public:
    Network() = default;

    /// Sorts nodes by id and edges by key, then checks every structural
    /// invariant. Throws std::invalid_argument on violation.
    Network(std::vector<Node> nodes, std::vector<Edge> edges, int generation_born = 0);

    std::span<const Node> nodes() const { return nodes_; }
    std::span<const Edge> edges() const { return edges_; }
    int generation_born() const { return generation_born_; }

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t client_count() const;
    std::size_t server_count() const;
    std::size_t working_edge_count() const;

    const Node* find(NodeId id) const;
    std::optional<std::size_t> index_of(NodeId id) const;
    const Edge* find_edge(NodeId a, NodeId b) const;
    bool has_edge(NodeId a, NodeId b) const { return find_edge(a, b) != nullptr; }

    Network with_edges(std::vector<Edge> edges) const;
    Network with_nodes_and_edges(std::vector<Node> nodes, std::vector<Edge> edges) const;
    Network reborn(int generation) const;

    /// 16 hex digit FNV-1a hash of the canonical content.
    std::string digest() const;

    bool operator==(const Network&) const = default;

private:
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    int generation_born_ = 0;
};

/// Random placement of clients and servers with no links. Clients draw
/// traffic uniformly from (0, t_max); servers get exactly t_s.
Network place_initial(const ModelParams& params, std::mt19937_64& rng);

/// Draws a fresh grid position at least min_spacing away from every node of
/// `net`. Returns nullopt after kPlacementAttempts rejections.
std::optional<GridPosition> sample_free_position(const Network& net, const ModelParams& params,
                                                 std::mt19937_64& rng);

NodeId grid_id(GridPosition pos, int grid_width);

}  // namespace netevo
