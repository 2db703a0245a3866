#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "netevo/metrics.hpp"
#include "support/fixtures.hpp"

using namespace netevo;
using netevo::testing::NetBuilder;

TEST_CASE("utilization examples") {
    SUBCASE("two clients fully served") {
        const Network net = NetBuilder().client(1, 50).client(2, 50).server(3, 100).link(1, 3).link(2, 3).build();
        CHECK(utilization(net) == 1.0);
        CHECK(literal_utilization(net) == 1.0);
    }
    SUBCASE("same nodes without links") {
        const Network net = NetBuilder().client(1, 50).client(2, 50).server(3, 100).build();
        CHECK(utilization(net) == 0.0);
        CHECK(literal_utilization(net) == 1.0);
    }
    SUBCASE("disconnected client does not count") {
        // Clients 20 and 30 reach server 4 (30 via 20); client 40 is isolated.
        // Connected demand 50 over 2 * 100.
        const Network net = NetBuilder()
                                .client(1, 20)
                                .client(2, 30)
                                .client(3, 40)
                                .server(4, 100)
                                .server(5, 100)
                                .link(1, 4)
                                .link(2, 1)
                                .build();
        CHECK(utilization(net) == 0.25);
    }
    SUBCASE("failed link cuts service") {
        const Network net = NetBuilder().client(1, 50).server(2, 100).link(1, 2, std::nullopt, Health::Failed).build();
        CHECK(utilization(net) == 0.0);
    }
    SUBCASE("no servers") {
        const Network net = NetBuilder().client(1, 50).build();
        CHECK_THROWS_AS(utilization(net), std::domain_error);
    }
}

TEST_CASE("cost examples") {
    SUBCASE("single edge: 10 / 10") {
        const Network net = NetBuilder().client(1).client(2).link(1, 2, 5.0).build();
        CHECK(cost(net, shortest_distances(net)) == 1.0);
    }
    SUBCASE("no edges") {
        const Network net = NetBuilder().client(1).client(2).build();
        CHECK(cost(net, shortest_distances(net)) == 0.0);
    }
    SUBCASE("unit triangle: 6 / 6") {
        const Network net = NetBuilder().client(1).client(2).client(3).link(1, 2, 1.0).link(2, 3, 1.0).link(1, 3, 1.0).build();
        CHECK(cost(net, shortest_distances(net)) == 1.0);
    }
    SUBCASE("path 1-2-3 with unit weights: 4 / 8") {
        const Network net = NetBuilder().client(1).client(2).client(3).link(1, 2, 1.0).link(2, 3, 1.0).build();
        CHECK(cost(net, shortest_distances(net)) == 0.5);
    }
    SUBCASE("failed links are excluded from the numerator") {
        const Network net = NetBuilder()
                                .client(1)
                                .client(2)
                                .client(3)
                                .link(1, 2, 1.0)
                                .link(2, 3, 1.0)
                                .link(1, 3, 7.0, Health::Failed)
                                .build();
        CHECK(cost(net, shortest_distances(net)) == 0.5);
    }
}

TEST_CASE("reliability examples") {
    SUBCASE("complete graph on 5 nodes") {
        NetBuilder b;
        for (std::uint32_t i = 0; i < 5; ++i) b.client(i);
        for (std::uint32_t i = 0; i < 5; ++i)
            for (std::uint32_t j = i + 1; j < 5; ++j) b.link(i, j);
        CHECK(reliability(shortest_distances(b.build())) == 20);
    }
    SUBCASE("empty graph") {
        const Network net = NetBuilder().client(0).client(1).client(2).build();
        CHECK(reliability(shortest_distances(net)) == 0);
    }
    SUBCASE("star with four leaves") {
        const Network net = NetBuilder().server(0).client(1).client(2).client(3).client(4)
                                .link(1, 0).link(2, 0).link(3, 0).link(4, 0).build();
        CHECK(reliability(shortest_distances(net)) == 20);
    }
}

TEST_CASE("evaluate examples") {
    SUBCASE("edgeless network scores zero") {
        const Network net = NetBuilder().client(1, 3).client(2, 4).server(3).build();
        const NetworkScores s = evaluate(net);
        CHECK(s.fitness == 0.0);
        CHECK(s.reliability == 0);
        CHECK(s.cost == 0.0);
        CHECK(s.redundancy == 0.0);
        CHECK(s.pleiotropy == 0.0);
        CHECK(s.utilization == 0.0);
    }
    SUBCASE("unit triangle of clients plus an isolated server") {
        const Network net = NetBuilder().client(1).client(2).client(3).server(4)
                                .link(1, 2, 1.0).link(2, 3, 1.0).link(1, 3, 1.0).build();
        const NetworkScores s = evaluate(net);
        CHECK(s.reliability == 6);
        CHECK(s.cost == 1.0);
        CHECK(s.fitness == 6.0);
    }
    SUBCASE("an extra isolated node changes nothing in P, R, F") {
        const auto base = NetBuilder().client(1).client(2).client(3).server(4).link(1, 4).link(2, 1).link(3, 4);
        NetBuilder bigger = base;
        bigger.client(9);
        const NetworkScores a = evaluate(base.build());
        const NetworkScores b = evaluate(bigger.build());
        CHECK(a.cost == b.cost);
        CHECK(a.reliability == b.reliability);
        CHECK(a.fitness == b.fitness);
    }
    SUBCASE("no servers propagates the utilization contract") {
        CHECK_THROWS_AS(evaluate(NetBuilder().client(1).build()), std::domain_error);
    }
    SUBCASE("no clients is scored with zero pleiotropy") {
        CHECK(evaluate(NetBuilder().server(1).build()).pleiotropy == 0.0);
    }
}

TEST_CASE("redundancy and pleiotropy examples") {
    SUBCASE("four clients each linked to two servers") {
        NetBuilder b;
        b.server(10).server(11);
        for (std::uint32_t c = 0; c < 4; ++c) b.client(c).link(c, 10).link(c, 11);
        const Network net = b.build();
        CHECK(redundancy(net) == 4.0);
        CHECK(pleiotropy(net) == 2.0);
    }
    SUBCASE("no links") {
        const Network net = NetBuilder().client(1).server(2).build();
        CHECK(redundancy(net) == 0.0);
        CHECK(pleiotropy(net) == 0.0);
    }
    SUBCASE("client-client link counts for both ends") {
        const Network net = NetBuilder().client(1).client(2).server(3).link(1, 2).build();
        CHECK(redundancy(net) == 2.0);
        CHECK(pleiotropy(net) == 0.0);
    }
    SUBCASE("two servers with three clients each") {
        NetBuilder b;
        b.server(20).server(21);
        for (std::uint32_t c = 0; c < 6; ++c) b.client(c).link(c, c < 3 ? 20 : 21);
        CHECK(pleiotropy(b.build()) == 1.0);
    }
    SUBCASE("one server with four clients") {
        NetBuilder b;
        b.server(9);
        for (std::uint32_t c = 0; c < 4; ++c) b.client(c).link(c, 9);
        CHECK(pleiotropy(b.build()) == 1.0);
    }
    SUBCASE("failed links are not counted") {
        const Network net = NetBuilder().client(1).server(2).link(1, 2, std::nullopt, Health::Failed).build();
        CHECK(redundancy(net) == 0.0);
        CHECK(pleiotropy(net) == 0.0);
    }
    SUBCASE("contract violations") {
        CHECK_THROWS_AS(redundancy(NetBuilder().client(1).build()), std::domain_error);
        CHECK_THROWS_AS(pleiotropy(NetBuilder().server(1).build()), std::domain_error);
    }
}

namespace {

struct RandomNet {
    Network net;
    std::size_t clients = 0;
    std::size_t servers = 0;
};

RandomNet random_network(std::mt19937_64& gen, bool client_server_only) {
    std::uniform_int_distribution<int> count(1, 8);
    RandomNet out;
    out.clients = static_cast<std::size_t>(count(gen));
    out.servers = static_cast<std::size_t>(1 + count(gen) % 3);
    NetBuilder b;
    std::vector<std::uint32_t> ids(out.clients + out.servers);
    std::iota(ids.begin(), ids.end(), 0u);
    std::shuffle(ids.begin(), ids.end(), gen);
    std::vector<std::uint32_t> clients(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(out.clients));
    std::vector<std::uint32_t> servers(ids.begin() + static_cast<std::ptrdiff_t>(out.clients), ids.end());
    std::uniform_real_distribution<double> traffic(0.5, 9.5);
    for (auto c : clients) b.client(c, traffic(gen));
    for (auto s : servers) b.server(s);
    std::bernoulli_distribution present(0.4), failed(0.2);
    for (auto c : clients) {
        for (auto s : servers)
            if (present(gen)) b.link(c, s, std::nullopt, failed(gen) ? Health::Failed : Health::Working);
        if (!client_server_only)
            for (auto c2 : clients)
                if (c < c2 && present(gen)) b.link(c, c2);
    }
    out.net = b.build();
    return out;
}

}  // namespace

TEST_CASE("D * |S| equals L * |C| when every link is client to server") {
    std::mt19937_64 gen(31);
    for (int trial = 0; trial < 300; ++trial) {
        const RandomNet r = random_network(gen, true);
        CHECK(redundancy(r.net) * static_cast<double>(r.servers) ==
              doctest::Approx(pleiotropy(r.net) * static_cast<double>(r.clients)).epsilon(1e-12));
    }
}

TEST_CASE("score properties on random networks") {
    std::mt19937_64 gen(47);
    for (int trial = 0; trial < 300; ++trial) {
        const RandomNet r = random_network(gen, false);
        const NetworkScores s = evaluate(r.net);
        const auto n = static_cast<long long>(r.net.node_count());
        CHECK(s.reliability <= n * (n - 1));
        CHECK((s.fitness == 0.0) == (r.net.working_edge_count() == 0 || s.reliability == 0));
        if (s.cost > 0.0) CHECK(s.fitness == doctest::Approx(static_cast<double>(s.reliability) / s.cost));

        // Rescaling every weight by the same factor leaves P unchanged.
        std::vector<Edge> scaled(r.net.edges().begin(), r.net.edges().end());
        for (Edge& e : scaled) e.weight *= 4.0;
        const Network big = r.net.with_edges(scaled);
        CHECK(evaluate(big).cost == doctest::Approx(s.cost).epsilon(1e-12));
        CHECK(evaluate(big).reliability == s.reliability);

        // Adding a working link never lowers R.
        const auto nodes = r.net.nodes();
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            for (std::size_t j = i + 1; j < nodes.size(); ++j) {
                if (nodes[i].kind == NodeKind::Server && nodes[j].kind == NodeKind::Server) continue;
                if (r.net.has_edge(nodes[i].id, nodes[j].id)) continue;
                std::vector<Edge> more(r.net.edges().begin(), r.net.edges().end());
                more.push_back(make_edge(nodes[i], nodes[j]));
                CHECK(evaluate(r.net.with_edges(more)).reliability >= s.reliability);
                i = nodes.size();
                break;
            }
        }
    }
}

TEST_CASE("reliability is invariant under relabelling") {
    std::mt19937_64 gen(53);
    for (int trial = 0; trial < 100; ++trial) {
        const RandomNet r = random_network(gen, false);
        // Map every id through a random permutation of a wider id range.
        std::vector<std::uint32_t> perm(64);
        std::iota(perm.begin(), perm.end(), 0u);
        std::shuffle(perm.begin(), perm.end(), gen);
        std::vector<Node> nodes(r.net.nodes().begin(), r.net.nodes().end());
        std::vector<Edge> edges(r.net.edges().begin(), r.net.edges().end());
        for (Node& n : nodes) n.id = NodeId{perm[n.id.value]};
        for (Edge& e : edges) {
            e.from = NodeId{perm[e.from.value]};
            e.to = NodeId{perm[e.to.value]};
            if (e.kind == EdgeKind::ClientClient && e.to < e.from) std::swap(e.from, e.to);
        }
        const Network relabelled(nodes, edges);
        CHECK(evaluate(relabelled).reliability == evaluate(r.net).reliability);
    }
}
