#include <cmath>

#include "doctest.h"
#include "netevo/apsp.hpp"
#include "netevo/graph.hpp"
#include "netevo/network_io.hpp"
#include "netevo/random.hpp"
#include "support/fixtures.hpp"

using namespace netevo;
using netevo::testing::NetBuilder;

namespace {

void check_placement(const Network& net, const ModelParams& p) {
    for (const Node& n : net.nodes()) {
        CHECK(n.pos.x >= 0);
        CHECK(n.pos.x < p.grid_width);
        CHECK(n.pos.y >= 0);
        CHECK(n.pos.y < p.grid_height);
        CHECK(n.id == grid_id(n.pos, p.grid_width));
        if (n.kind == NodeKind::Client) {
            CHECK(n.traffic > 0.0);
            CHECK(n.traffic < p.t_max);
        } else {
            CHECK(n.traffic == p.t_s);
        }
        CHECK(n.state == Health::Working);
        CHECK(n.failure_rate == 0.0);
    }
    const auto nodes = net.nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            CHECK(euclidean_weight(nodes[i].pos, nodes[j].pos) >= p.min_spacing);
}

}  // namespace

TEST_CASE("place_initial builds an edgeless network with the requested nodes") {
    ModelParams p;  // 20 clients, 3 servers, 100x100, spacing 5
    Rng rng = make_rng(1, Stream::Placement);
    const Network net = place_initial(p, rng);
    CHECK(net.node_count() == 23);
    CHECK(net.client_count() == 20);
    CHECK(net.server_count() == 3);
    CHECK(net.edge_count() == 0);
    check_placement(net, p);
}

TEST_CASE("place_initial degenerate single server") {
    ModelParams p;
    p.n_clients = 0;
    p.n_servers = 1;
    Rng rng = make_rng(7, Stream::Placement);
    const Network net = place_initial(p, rng);
    CHECK(net.node_count() == 1);
    CHECK(net.server_count() == 1);
    CHECK(net.edge_count() == 0);
}

TEST_CASE("place_initial reports a grid that is too dense") {
    ModelParams p;
    p.n_clients = 50;
    p.n_servers = 5;
    p.grid_width = 10;
    p.grid_height = 10;
    p.min_spacing = 5;
    Rng rng = make_rng(3, Stream::Placement);
    CHECK_THROWS_AS(place_initial(p, rng), PlacementError);
    Rng rng2 = make_rng(3, Stream::Placement);
    try {
        place_initial(p, rng2);
    } catch (const PlacementError& e) {
        CHECK(std::string(e.what()).find("grid too dense") != std::string::npos);
    }
}

TEST_CASE("placement invariants hold across seeds and is deterministic") {
    ModelParams p;
    p.n_clients = 30;
    p.n_servers = 4;
    p.grid_width = 60;
    p.grid_height = 40;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Rng a = make_rng(seed, Stream::Placement);
        Rng b = make_rng(seed, Stream::Placement);
        const Network na = place_initial(p, a);
        const Network nb = place_initial(p, b);
        CHECK(na == nb);
        CHECK(na.digest() == nb.digest());
        check_placement(na, p);
    }
}

TEST_CASE("euclidean_weight") {
    CHECK(euclidean_weight({0, 0}, {3, 4}) == 5.0);
    CHECK(euclidean_weight({0, 0}, {1, 1}) == std::sqrt(2.0));
    CHECK_THROWS_AS(euclidean_weight({2, 7}, {2, 7}), std::invalid_argument);
}

TEST_CASE("make_edge orients client-server links and rejects server pairs") {
    Node c{NodeId{9}, NodeKind::Client, {0, 0}, 1.0};
    Node s{NodeId{2}, NodeKind::Server, {3, 4}, 100.0};
    Node s2{NodeId{5}, NodeKind::Server, {6, 8}, 100.0};
    const Edge e = make_edge(s, c);
    CHECK(e.kind == EdgeKind::ClientServer);
    CHECK(e.from == NodeId{9});
    CHECK(e.to == NodeId{2});
    CHECK(e.weight == 5.0);
    CHECK_THROWS_AS(make_edge(s, s2), std::invalid_argument);
    CHECK_THROWS_AS(make_edge(c, c), std::invalid_argument);
}

TEST_CASE("Network rejects structural violations") {
    Node a{NodeId{1}, NodeKind::Client, {0, 0}, 1.0};
    Node b{NodeId{2}, NodeKind::Client, {5, 0}, 1.0};
    Node s{NodeId{3}, NodeKind::Server, {9, 0}, 100.0};
    const Edge ab = make_edge(a, b);

    SUBCASE("dangling endpoint") { CHECK_THROWS_AS(Network({a}, {ab}), std::invalid_argument); }
    SUBCASE("duplicate link in either orientation") {
        Edge flipped = ab;
        std::swap(flipped.from, flipped.to);
        CHECK_THROWS_AS(Network({a, b}, {ab, flipped}), std::invalid_argument);
    }
    SUBCASE("duplicate node id") { CHECK_THROWS_AS(Network({a, a}, {}), std::invalid_argument); }
    SUBCASE("kind mismatch") {
        Edge wrong = make_edge(a, s);
        wrong.kind = EdgeKind::ClientClient;
        CHECK_THROWS_AS(Network({a, s}, {wrong}), std::invalid_argument);
    }
    SUBCASE("server to client orientation") {
        Edge wrong = make_edge(a, s);
        std::swap(wrong.from, wrong.to);
        CHECK_THROWS_AS(Network({a, s}, {wrong}), std::invalid_argument);
    }
    SUBCASE("working link with non-zero failure counter") {
        Edge wrong = ab;
        wrong.steps_since_failure = 2;
        CHECK_THROWS_AS(Network({a, b}, {wrong}), std::invalid_argument);
    }
    SUBCASE("failure rate outside [0,1]") {
        Node bad = a;
        bad.failure_rate = 1.5;
        CHECK_THROWS_AS(Network({bad}, {}), std::invalid_argument);
    }
}

TEST_CASE("adjacency_matrix examples") {
    SUBCASE("disconnected pair") {
        const Network net = NetBuilder().client(1).client(2).build();
        const MinPlusMatrix a = adjacency_matrix(net, true);
        CHECK(a == MinPlusMatrix{{0, kUnreachable}, {kUnreachable, 0}});
    }
    SUBCASE("one working link") {
        const Network net = NetBuilder().client(1).client(2).link(1, 2, 5.0).build();
        CHECK(adjacency_matrix(net, true) == MinPlusMatrix{{0, 5}, {5, 0}});
    }
    SUBCASE("failed link carries nothing when failures are respected") {
        const Network net =
            NetBuilder().client(1).client(2).link(1, 2, 5.0, Health::Failed).build();
        CHECK(adjacency_matrix(net, true) == MinPlusMatrix{{0, kUnreachable}, {kUnreachable, 0}});
        CHECK(adjacency_matrix(net, false) == MinPlusMatrix{{0, 5}, {5, 0}});
    }
    SUBCASE("empty network") { CHECK(adjacency_matrix(Network{}, true).size() == 0); }
}

TEST_CASE("adjacency_matrix is symmetric with zero diagonal on random networks") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 50; ++trial) {
        NetBuilder b;
        const int n = 2 + trial % 12;
        for (int i = 0; i < n; ++i) b.client(static_cast<std::uint32_t>(i));
        std::bernoulli_distribution present(0.4), failed(0.3);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (present(gen))
                    b.link(i, j, std::nullopt, failed(gen) ? Health::Failed : Health::Working);
        const Network net = b.build();
        for (bool respect : {true, false}) {
            const MinPlusMatrix a = adjacency_matrix(net, respect);
            for (std::size_t i = 0; i < a.size(); ++i) {
                CHECK(a(i, i) == 0.0);
                for (std::size_t j = 0; j < a.size(); ++j) CHECK(a(i, j) == a(j, i));
            }
        }
    }
}

TEST_CASE("network document round-trips every field") {
    Rng rng = make_rng(5, Stream::Placement);
    ModelParams p;
    const Network placed = place_initial(p, rng);
    std::vector<Edge> edges;
    const auto nodes = placed.nodes();
    for (std::size_t i = 0; i + 1 < nodes.size(); i += 2) {
        if (nodes[i].kind == NodeKind::Server && nodes[i + 1].kind == NodeKind::Server) continue;
        Edge e = make_edge(nodes[i], nodes[i + 1], 0.013);
        if (i % 4 == 0) {
            e.state = Health::Failed;
            e.steps_since_failure = static_cast<int>(i) + 1;
        }
        edges.push_back(e);
    }
    const Network net = placed.with_edges(edges).reborn(17);
    const Network back = network_from_string(network_to_string(net));
    CHECK(back == net);
    CHECK(back.generation_born() == 17);
    CHECK(back.digest() == net.digest());
}

TEST_CASE("network document rejects bad input") {
    CHECK_THROWS_AS(network_from_string("{"), std::invalid_argument);
    CHECK_THROWS_AS(network_from_string(R"({"format":"other","version":1})"), std::invalid_argument);
    CHECK_THROWS_AS(
        network_from_string(R"({"format":"netevo-network","version":99,"generation_born":0,"nodes":[],"edges":[]})"),
        std::invalid_argument);
    const std::string dangling =
        R"({"format":"netevo-network","version":1,"generation_born":0,"nodes":[],)"
        R"("edges":[{"from":1,"to":2,"kind":"client_client","weight":1,"failure_rate":0,"state":"working","steps_since_failure":0}]})";
    CHECK_THROWS_AS(network_from_string(dangling), std::invalid_argument);
}
