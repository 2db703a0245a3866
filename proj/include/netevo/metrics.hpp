#pragma once

#include "netevo/apsp.hpp"
#include "netevo/graph.hpp"

namespace netevo {

struct NetworkScores {
    double utilization = 0.0;  // U, effective (connected clients only)
    double cost = 0.0;         // P
    long long reliability = 0; // R
    double fitness = 0.0;      // F = R / P
    double redundancy = 0.0;   // D
    double pleiotropy = 0.0;   // L

    bool operator==(const NetworkScores&) const = default;
};

/// Effective utilization: summed traffic of clients that have a working path
/// to a working server, over |S| * T_s. `dist` must come from the
/// working-links adjacency of `net`. Throws std::domain_error with no servers.
double utilization(const Network& net, const DistanceMatrix& dist);
double utilization(const Network& net);

/// Demand of every client over |S| * T_s, regardless of connectivity.
double literal_utilization(const Network& net);

/// Total working link weight over total finite pair distance, both summed
/// over ordered pairs i != j. Zero when there are no working links.
double cost(const Network& net, const DistanceMatrix& dist);

long long reliability(const DistanceMatrix& dist);

/// Working client out-degree summed over clients, divided by |S|. A
/// client-client link adds one to both ends.
double redundancy(const Network& net);

/// Working client->server in-degree summed over servers, divided by |C|.
double pleiotropy(const Network& net);

/// Computes the working-links distance matrix once and derives every score.
/// Fitness is 0 for networks with no connected pair. A network without
/// clients reports pleiotropy 0 rather than failing.
NetworkScores evaluate(const Network& net);

}  // namespace netevo
