#include "netevo/metrics.hpp"

#include <stdexcept>

namespace netevo {

namespace {

double total_server_capacity(const Network& net) {
    double capacity = 0.0;
    std::size_t servers = 0;
    for (const Node& n : net.nodes()) {
        if (n.kind != NodeKind::Server) continue;
        ++servers;
        capacity += n.traffic;
    }
    if (servers == 0) throw std::domain_error("utilization: network has no servers");
    return capacity;
}

}  // namespace

double utilization(const Network& net, const DistanceMatrix& dist) {
    const double capacity = total_server_capacity(net);
    const auto nodes = net.nodes();
    double demand = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].kind != NodeKind::Client) continue;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            const Node& s = nodes[j];
            if (s.kind == NodeKind::Server && s.state == Health::Working && dist.reachable(i, j)) {
                demand += nodes[i].traffic;
                break;
            }
        }
    }
    return demand / capacity;
}

double utilization(const Network& net) { return utilization(net, shortest_distances(net, true)); }

double literal_utilization(const Network& net) {
    const double capacity = total_server_capacity(net);
    double demand = 0.0;
    for (const Node& n : net.nodes())
        if (n.kind == NodeKind::Client) demand += n.traffic;
    return demand / capacity;
}

double cost(const Network& net, const DistanceMatrix& dist) {
    double link_total = 0.0;
    for (const Edge& e : net.edges())
        if (e.working()) link_total += 2.0 * e.weight;
    if (link_total == 0.0) return 0.0;

    double path_total = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i)
        for (std::size_t j = 0; j < dist.size(); ++j)
            if (i != j && dist.reachable(i, j)) path_total += dist.d(i, j);
    return link_total / path_total;
}

long long reliability(const DistanceMatrix& dist) { return connected_pair_count(dist); }

double redundancy(const Network& net) {
    const std::size_t servers = net.server_count();
    if (servers == 0) throw std::domain_error("redundancy: network has no servers");
    double out_degree = 0.0;
    for (const Edge& e : net.edges()) {
        if (!e.working()) continue;
        out_degree += e.kind == EdgeKind::ClientClient ? 2.0 : 1.0;
    }
    return out_degree / static_cast<double>(servers);
}

double pleiotropy(const Network& net) {
    const std::size_t clients = net.client_count();
    if (clients == 0) throw std::domain_error("pleiotropy: network has no clients");
    double in_degree = 0.0;
    for (const Edge& e : net.edges())
        if (e.working() && e.kind == EdgeKind::ClientServer) in_degree += 1.0;
    return in_degree / static_cast<double>(clients);
}

NetworkScores evaluate(const Network& net) {
    const DistanceMatrix dist = shortest_distances(net, true);
    NetworkScores s;
    s.utilization = utilization(net, dist);
    s.cost = cost(net, dist);
    s.reliability = reliability(dist);
    s.fitness = (s.cost > 0.0 && s.reliability > 0) ? static_cast<double>(s.reliability) / s.cost : 0.0;
    s.redundancy = redundancy(net);
    s.pleiotropy = net.client_count() > 0 ? pleiotropy(net) : 0.0;
    return s;
}

}  // namespace netevo
