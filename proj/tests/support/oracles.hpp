#pragma once

// Reference algorithms used only by the tests. They share no code with the
// library's min-plus implementation.

#include <limits>
#include <queue>
#include <random>
#include <vector>

namespace netevo::testing {

using Dense = std::vector<std::vector<double>>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline Dense floyd_warshall(Dense d) {
    const std::size_t n = d.size();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    return d;
}

inline std::vector<double> dijkstra(const Dense& w, std::size_t source) {
    const std::size_t n = w.size();
    std::vector<double> dist(n, kInf);
    std::vector<bool> done(n, false);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[source] = 0.0;
    pq.emplace(0.0, source);
    while (!pq.empty()) {
        auto [du, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        done[u] = true;
        for (std::size_t v = 0; v < n; ++v) {
            if (v == u || w[u][v] == kInf) continue;
            if (du + w[u][v] < dist[v]) {
                dist[v] = du + w[u][v];
                pq.emplace(dist[v], v);
            }
        }
    }
    return dist;
}

/// Naive triple-loop (min, +) product.
inline Dense naive_minplus(const Dense& a, const Dense& b) {
    const std::size_t n = a.size();
    Dense c(n, std::vector<double>(n, kInf));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) c[i][j] = std::min(c[i][j], a[i][k] + b[k][j]);
    return c;
}

/// Component sizes by BFS over finite off-diagonal entries.
inline std::vector<std::size_t> component_sizes(const Dense& w) {
    const std::size_t n = w.size();
    std::vector<int> comp(n, -1);
    std::vector<std::size_t> sizes;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        const int id = static_cast<int>(sizes.size());
        sizes.push_back(0);
        std::queue<std::size_t> q;
        q.push(s);
        comp[s] = id;
        while (!q.empty()) {
            const std::size_t u = q.front();
            q.pop();
            ++sizes.back();
            for (std::size_t v = 0; v < n; ++v) {
                if (comp[v] < 0 && w[u][v] != kInf) {
                    comp[v] = id;
                    q.push(v);
                }
            }
        }
    }
    return sizes;
}

/// Symmetric random adjacency with zero diagonal. Weights are multiples of
/// 1/4 in [0.25, 25] so every path sum is exact in binary floating point;
/// `density` controls the share of present links, which yields varied
/// disconnected (infinite) patterns.
inline Dense random_exact_adjacency(std::mt19937_64& rng, std::size_t n, double density) {
    Dense a(n, std::vector<double>(n, kInf));
    std::uniform_int_distribution<int> quarters(1, 100);
    std::bernoulli_distribution present(density);
    for (std::size_t i = 0; i < n; ++i) {
        a[i][i] = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (present(rng)) a[i][j] = a[j][i] = quarters(rng) / 4.0;
        }
    }
    return a;
}

inline Dense random_real_adjacency(std::mt19937_64& rng, std::size_t n, double density) {
    Dense a(n, std::vector<double>(n, kInf));
    std::uniform_real_distribution<double> weight(0.01, 100.0);
    std::bernoulli_distribution present(density);
    for (std::size_t i = 0; i < n; ++i) {
        a[i][i] = 0.0;
        for (std::size_t j = i + 1; j < n; ++j)
            if (present(rng)) a[i][j] = a[j][i] = weight(rng);
    }
    return a;
}

}  // namespace netevo::testing
