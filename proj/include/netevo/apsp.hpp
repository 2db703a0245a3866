#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "netevo/graph.hpp"

namespace netevo {

/// Marker for "no path". IEEE +inf absorbs addition (inf + w == inf) and
/// loses every min() against a finite value, so it never turns into a
/// spurious finite distance.
inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

/// Dense n x n matrix over the (min, +) semiring, row-major.
class MinPlusMatrix {
public:
    MinPlusMatrix() = default;
    explicit MinPlusMatrix(std::size_t n, double fill = kUnreachable) : n_(n), a_(n * n, fill) {}
    MinPlusMatrix(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t size() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    bool operator==(const MinPlusMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

/// C(i,j) = min_k A(i,k) + B(k,j). Throws std::invalid_argument on a
/// dimension mismatch.
MinPlusMatrix minplus_multiply(const MinPlusMatrix& a, const MinPlusMatrix& b);

/// Weighted adjacency matrix in node-id order (the order of Network::nodes()).
/// Links are undirected, so the result is symmetric with a zero diagonal.
/// With respect_failures set, failed links are treated as absent.
MinPlusMatrix adjacency_matrix(const Network& net, bool respect_failures);

struct DistanceMatrix {
    MinPlusMatrix d;
    std::vector<NodeId> index;  // matrix index -> node id
    int squarings = 0;          // min-plus products performed

    std::size_t size() const { return d.size(); }
    bool reachable(std::size_t i, std::size_t j) const { return d(i, j) != kUnreachable; }
};

/// All-pairs shortest distances by repeated squaring: A, A^2, A^4, ... until
/// the power reaches n-1, i.e. ceil(log2(n-1)) products for n >= 2.
DistanceMatrix shortest_distances(const MinPlusMatrix& adjacency);
DistanceMatrix shortest_distances(const Network& net, bool respect_failures = true);

/// Ordered pairs (i, j), i != j, with a finite distance.
long long connected_pair_count(const DistanceMatrix& dist);

}  // namespace netevo
