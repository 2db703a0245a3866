#pragma once

#include <optional>
#include <vector>

#include "netevo/apsp.hpp"
#include "netevo/graph.hpp"
#include "oracles.hpp"

namespace netevo::testing {

/// Hand-built networks. Node n sits at (10 * n, 0) unless placed explicitly;
/// link weights default to the Euclidean distance but can be forced.
class NetBuilder {
public:
    NetBuilder& client(std::uint32_t id, double traffic = 1.0) {
        return add(id, NodeKind::Client, {static_cast<int>(10 * id), 0}, traffic);
    }
    NetBuilder& server(std::uint32_t id, double capacity = 100.0) {
        return add(id, NodeKind::Server, {static_cast<int>(10 * id), 0}, capacity);
    }
    NetBuilder& add(std::uint32_t id, NodeKind kind, GridPosition pos, double traffic) {
        Node n;
        n.id = NodeId{id};
        n.kind = kind;
        n.pos = pos;
        n.traffic = traffic;
        nodes_.push_back(n);
        return *this;
    }
    NetBuilder& link(std::uint32_t a, std::uint32_t b, std::optional<double> weight = std::nullopt,
                     Health state = Health::Working) {
        Edge e = make_edge(node(a), node(b));
        if (weight) e.weight = *weight;
        e.state = state;
        e.steps_since_failure = state == Health::Working ? 0 : 1;
        edges_.push_back(e);
        return *this;
    }
    Network build() const { return Network(nodes_, edges_); }

private:
    const Node& node(std::uint32_t id) const {
        for (const Node& n : nodes_)
            if (n.id.value == id) return n;
        throw std::invalid_argument("NetBuilder: unknown node");
    }

    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
};

inline MinPlusMatrix to_matrix(const Dense& d) {
    MinPlusMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j) m(i, j) = d[i][j];
    return m;
}

inline Dense to_dense(const MinPlusMatrix& m) {
    Dense d(m.size(), std::vector<double>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) d[i][j] = m(i, j);
    return d;
}

}  // namespace netevo::testing
