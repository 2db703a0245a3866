#include "netevo/apsp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace netevo {

MinPlusMatrix::MinPlusMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : n_(rows.size()), a_() {
    a_.reserve(n_ * n_);
    for (const auto& row : rows) {
        if (row.size() != n_) throw std::invalid_argument("MinPlusMatrix: rows must be square");
        a_.insert(a_.end(), row.begin(), row.end());
    }
}

MinPlusMatrix minplus_multiply(const MinPlusMatrix& a, const MinPlusMatrix& b) {
    if (a.size() != b.size()) throw std::invalid_argument("minplus_multiply: dimension mismatch");
    const std::size_t n = a.size();
    MinPlusMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const double aik = a(i, k);
            if (aik == kUnreachable) continue;
            for (std::size_t j = 0; j < n; ++j) {
                const double v = aik + b(k, j);
                if (v < c(i, j)) c(i, j) = v;
            }
        }
    }
    return c;
}

MinPlusMatrix adjacency_matrix(const Network& net, bool respect_failures) {
    const std::size_t n = net.node_count();
    MinPlusMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) a(i, i) = 0.0;
    for (const Edge& e : net.edges()) {
        if (respect_failures && !e.working()) continue;
        const std::size_t i = *net.index_of(e.from);
        const std::size_t j = *net.index_of(e.to);
        a(i, j) = std::min(a(i, j), e.weight);
        a(j, i) = a(i, j);
    }
    return a;
}

DistanceMatrix shortest_distances(const MinPlusMatrix& adjacency) {
    const std::size_t n = adjacency.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (adjacency(i, i) != 0.0)
            throw std::invalid_argument("shortest_distances: adjacency diagonal must be zero");
        for (std::size_t j = 0; j < n; ++j) {
            const double w = adjacency(i, j);
            if (std::isnan(w) || w < 0.0)
                throw std::invalid_argument("shortest_distances: weights must be non-negative");
        }
    }

    DistanceMatrix out;
    out.d = adjacency;
    // d currently holds paths of at most `hops` edges.
    for (std::size_t hops = 1; hops + 1 < n; hops *= 2) {
        out.d = minplus_multiply(out.d, out.d);
        ++out.squarings;
    }
    out.index.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.index[i] = NodeId{static_cast<std::uint32_t>(i)};
    return out;
}

DistanceMatrix shortest_distances(const Network& net, bool respect_failures) {
    DistanceMatrix out = shortest_distances(adjacency_matrix(net, respect_failures));
    for (std::size_t i = 0; i < net.node_count(); ++i) out.index[i] = net.nodes()[i].id;
    return out;
}

long long connected_pair_count(const DistanceMatrix& dist) {
    long long count = 0;
    for (std::size_t i = 0; i < dist.size(); ++i)
        for (std::size_t j = 0; j < dist.size(); ++j)
            if (i != j && dist.reachable(i, j)) ++count;
    return count;
}

}  // namespace netevo
