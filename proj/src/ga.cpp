#include "netevo/ga.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "netevo/apsp.hpp"
#include "netevo/network_io.hpp"

namespace netevo {

using nlohmann::json;

bool same_fitness(double a, double b) {
    if (a == b) return true;
    return std::abs(a - b) <= kConvergenceTolerance * std::max(std::abs(a), std::abs(b));
}

bool converged_window(std::span<const double> best_history) {
    if (best_history.size() < 3) return false;
    const auto last = best_history.last(3);
    return same_fitness(last[0], last[1]) && same_fitness(last[1], last[2]) &&
           same_fitness(last[0], last[2]);
}

Network apply_failures(const Network& net, const GaConfig& cfg, Rng& rng) {
    std::vector<Edge> edges(net.edges().begin(), net.edges().end());
    for (Edge& e : edges) {
        if (e.working()) {
            if (coin(rng, cfg.link_failure_prob)) {
                e.state = Health::Failed;
                e.steps_since_failure = 1;
            }
        } else if (coin(rng, cfg.link_repair_prob)) {
            e.state = Health::Working;
            e.steps_since_failure = 0;
        } else {
            ++e.steps_since_failure;
        }
    }
    return net.with_edges(std::move(edges));
}

namespace {

// Clients with a working path to a working server, by node index.
std::vector<bool> served_clients(const Network& net) {
    const auto nodes = net.nodes();
    const std::size_t n = nodes.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (const Edge& e : net.edges()) {
        if (!e.working()) continue;
        const std::size_t i = *net.index_of(e.from);
        const std::size_t j = *net.index_of(e.to);
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    std::vector<bool> reached(n, false);
    std::deque<std::size_t> frontier;
    for (std::size_t i = 0; i < n; ++i) {
        if (nodes[i].kind == NodeKind::Server && nodes[i].state == Health::Working) {
            reached[i] = true;
            frontier.push_back(i);
        }
    }
    while (!frontier.empty()) {
        const std::size_t u = frontier.front();
        frontier.pop_front();
        for (std::size_t v : adj[u]) {
            if (!reached[v]) {
                reached[v] = true;
                frontier.push_back(v);
            }
        }
    }
    return reached;
}

std::optional<Edge> biased_client_server_link(const Network& net, const GaConfig& cfg, Rng& rng) {
    const auto nodes = net.nodes();
    const std::vector<bool> served = served_clients(net);
    std::vector<std::size_t> clients;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].kind == NodeKind::Client && !served[i]) clients.push_back(i);
    if (clients.empty()) {
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i].kind == NodeKind::Client) clients.push_back(i);
    }
    if (clients.empty()) return std::nullopt;

    const Node& client = nodes[clients[uniform_index(rng, clients.size())]];
    std::vector<std::size_t> servers;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const Node& s = nodes[j];
        if (s.kind == NodeKind::Server && s.state == Health::Working && !net.has_edge(client.id, s.id))
            servers.push_back(j);
    }
    if (servers.empty()) return std::nullopt;
    const Node& server = nodes[servers[uniform_index(rng, servers.size())]];
    return make_edge(client, server, cfg.link_failure_prob);
}

std::optional<Edge> uniform_link(const Network& net, const GaConfig& cfg, Rng& rng) {
    const auto nodes = net.nodes();
    std::vector<std::pair<std::size_t, std::size_t>> legal;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            if (nodes[i].kind == NodeKind::Server && nodes[j].kind == NodeKind::Server) continue;
            if (net.has_edge(nodes[i].id, nodes[j].id)) continue;
            legal.emplace_back(i, j);
        }
    }
    if (legal.empty()) return std::nullopt;
    const auto [i, j] = legal[uniform_index(rng, legal.size())];
    return make_edge(nodes[i], nodes[j], cfg.link_failure_prob);
}

Network add_links(const Network& net, const GaConfig& cfg, Rng& rng) {
    Network current = net;
    for (int k = 0; k < cfg.links_per_low_mutation; ++k) {
        std::optional<Edge> link;
        if (coin(rng, cfg.server_link_bias)) link = biased_client_server_link(current, cfg, rng);
        if (!link) link = uniform_link(current, cfg, rng);
        if (!link) break;  // complete graph
        std::vector<Edge> edges(current.edges().begin(), current.edges().end());
        edges.push_back(*link);
        current = current.with_edges(std::move(edges));
    }
    return current;
}

Network remove_link(const Network& net, Rng& rng, std::vector<std::string>* diagnostics) {
    std::vector<std::size_t> working;
    const auto edges = net.edges();
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i].working()) working.push_back(i);
    if (working.empty()) {
        if (diagnostics) diagnostics->push_back("mutate: no working link to remove");
        return net;
    }
    const std::size_t victim = working[uniform_index(rng, working.size())];
    std::vector<Edge> kept;
    kept.reserve(edges.size() - 1);
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (i != victim) kept.push_back(edges[i]);
    return net.with_edges(std::move(kept));
}

Network add_server(const Network& net, const GaConfig& cfg, Rng& rng,
                   std::vector<std::string>* diagnostics) {
    const auto pos = sample_free_position(net, cfg.model, rng);
    if (!pos) {
        if (diagnostics) diagnostics->push_back("mutate: no free grid position for a new server");
        return net;
    }
    Node server;
    server.id = grid_id(*pos, cfg.model.grid_width);
    server.kind = NodeKind::Server;
    server.pos = *pos;
    server.traffic = cfg.model.t_s;
    if (net.find(server.id)) {
        if (diagnostics) diagnostics->push_back("mutate: grid id of new server already in use");
        return net;
    }
    std::vector<Node> nodes(net.nodes().begin(), net.nodes().end());
    nodes.push_back(server);
    return net.with_nodes_and_edges(std::move(nodes), {net.edges().begin(), net.edges().end()});
}

}  // namespace

Network mutate(const Network& net, const GaConfig& cfg, Rng& rng,
               std::vector<std::string>* diagnostics) {
    const double u = utilization(net);
    if (u < cfg.u_low) return add_links(net, cfg, rng);
    if (u > cfg.u_high) {
        if (coin(rng, 0.5)) return remove_link(net, rng, diagnostics);
        return add_server(net, cfg, rng, diagnostics);
    }
    return net;
}

Network crossover(const Network& a, const Network& b, const GaConfig& cfg, Rng& rng) {
    std::vector<Node> nodes;
    nodes.reserve(a.node_count() + b.node_count());
    bool shared = a.node_count() == 0 || b.node_count() == 0;
    {
        auto ia = a.nodes().begin();
        auto ib = b.nodes().begin();
        while (ia != a.nodes().end() || ib != b.nodes().end()) {
            if (ib == b.nodes().end() || (ia != a.nodes().end() && ia->id < ib->id)) {
                nodes.push_back(*ia++);
            } else if (ia == a.nodes().end() || ib->id < ia->id) {
                nodes.push_back(*ib++);
            } else {
                if (ia->kind != ib->kind || ia->pos != ib->pos)
                    throw std::invalid_argument("crossover: parents disagree about node " +
                                                std::to_string(ia->id.value));
                shared = true;
                nodes.push_back(*ia);
                ++ia;
                ++ib;
            }
        }
    }
    if (!shared) throw std::invalid_argument("crossover: parents share no node ids");

    std::vector<Edge> edges;
    auto ea = a.edges().begin();
    auto eb = b.edges().begin();
    while (ea != a.edges().end() || eb != b.edges().end()) {
        if (eb == b.edges().end() || (ea != a.edges().end() && key_of(*ea) < key_of(*eb))) {
            if (coin(rng, cfg.crossover_keep_prob)) edges.push_back(*ea);
            ++ea;
        } else if (ea == a.edges().end() || key_of(*eb) < key_of(*ea)) {
            if (coin(rng, cfg.crossover_keep_prob)) edges.push_back(*eb);
            ++eb;
        } else {
            edges.push_back(!ea->working() && eb->working() ? *eb : *ea);
            ++ea;
            ++eb;
        }
    }
    return Network(std::move(nodes), std::move(edges), std::max(a.generation_born(), b.generation_born()));
}

std::vector<std::size_t> rank_population(std::span<const Network> population,
                                         std::span<const NetworkScores> scores) {
    std::vector<std::string> digests;
    digests.reserve(population.size());
    for (const Network& n : population) digests.push_back(n.digest());
    std::vector<std::size_t> order(population.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (scores[x].fitness != scores[y].fitness) return scores[x].fitness > scores[y].fitness;
        if (scores[x].cost != scores[y].cost) return scores[x].cost < scores[y].cost;
        return digests[x] < digests[y];
    });
    return order;
}

namespace {

std::vector<NetworkScores> score_all(std::span<const Network> population) {
    std::vector<NetworkScores> scores;
    scores.reserve(population.size());
    for (const Network& n : population) scores.push_back(evaluate(n));
    return scores;
}

}  // namespace

StepResult step_generation(std::span<const Network> population, const GaConfig& cfg, Rng& rng,
                           int generation, std::span<const double> prior_best,
                           const MatingObserver& observer) {
    if (population.empty()) throw std::invalid_argument("step_generation: empty population");
    const std::size_t q = static_cast<std::size_t>(cfg.q);

    StepResult out;
    const auto scores = score_all(population);
    const auto order = rank_population(population, scores);

    std::vector<Network> parents;
    parents.reserve(q);
    for (std::size_t i = 0; i < std::min(q, order.size()); ++i) parents.push_back(population[order[i]]);
    if (parents.size() < q) {
        out.diagnostics.push_back("step_generation: population of " +
                                  std::to_string(population.size()) + " is smaller than q = " +
                                  std::to_string(q) + "; padding with copies of the best genome");
        while (parents.size() < q) parents.push_back(parents.front());
    }

    std::vector<Network> children;
    children.reserve(q * (q - 1) / 2);
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t j = i + 1; j < q; ++j) {
            Network child = crossover(parents[i], parents[j], cfg, rng);
            if (observer) observer(parents[i], parents[j], child);
            children.push_back(std::move(child));
        }
    }
    for (Network& child : children) {
        child = apply_failures(child, cfg, rng);
        child = mutate(child, cfg, rng, &out.diagnostics).reborn(generation);
    }

    out.population = std::move(parents);
    out.population.insert(out.population.end(), std::make_move_iterator(children.begin()),
                          std::make_move_iterator(children.end()));

    const auto new_scores = score_all(out.population);
    const auto new_order = rank_population(out.population, new_scores);
    out.elite_index = new_order.front();

    GenerationRecord& rec = out.record;
    rec.generation = generation;
    rec.best_scores = new_scores[out.elite_index];
    rec.best_network_digest = out.population[out.elite_index].digest();
    rec.population_fitness.reserve(new_scores.size());
    for (const auto& s : new_scores) rec.population_fitness.push_back(s.fitness);

    std::vector<double> history(prior_best.begin(), prior_best.end());
    history.push_back(rec.best_scores.fitness);
    rec.converged = converged_window(history);
    return out;
}

Engine::Engine(GaConfig cfg, const Network& initial)
    : cfg_(std::move(cfg)), rng_(make_rng(cfg_.seed, Stream::Evolution)) {
    require_valid(cfg_);
    const int size = population_size(cfg_.q);
    population_.reserve(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) population_.push_back(mutate(initial, cfg_, rng_, &diagnostics_));
    const auto scores = score_all(population_);
    elite_index_ = rank_population(population_, scores).front();
}

void Engine::set_config(GaConfig cfg) {
    require_valid(cfg);
    cfg_ = std::move(cfg);
}

const GenerationRecord& Engine::step(const MatingObserver& observer) {
    StepResult result =
        step_generation(population_, cfg_, rng_, generation_ + 1, best_history_, observer);
    population_ = std::move(result.population);
    elite_index_ = result.elite_index;
    diagnostics_.insert(diagnostics_.end(), result.diagnostics.begin(), result.diagnostics.end());
    ++generation_;
    best_history_.push_back(result.record.best_scores.fitness);
    records_.push_back(std::move(result.record));
    return records_.back();
}

json Engine::checkpoint() const {
    json population = json::array();
    for (const Network& n : population_) population.push_back(network_to_json(n));
    json records = json::array();
    for (const auto& r : records_) records.push_back(record_to_json(r));
    return {{"format", "netevo-checkpoint"},
            {"version", 1},
            {"config", config_to_json(cfg_)},
            {"generation", generation_},
            {"rng", save_rng(rng_)},
            {"elite_index", elite_index_},
            {"population", std::move(population)},
            {"records", std::move(records)},
            {"diagnostics", diagnostics_}};
}

Engine Engine::restore(const json& doc) {
    try {
        if (doc.at("format").get<std::string>() != "netevo-checkpoint")
            throw std::invalid_argument("not a checkpoint document");
        if (doc.at("version").get<int>() != 1)
            throw std::invalid_argument("unsupported checkpoint version");
        Engine e;
        e.cfg_ = config_from_json(doc.at("config"));
        require_valid(e.cfg_);
        e.generation_ = doc.at("generation").get<int>();
        e.rng_ = load_rng(doc.at("rng").get<std::string>());
        for (const json& n : doc.at("population")) e.population_.push_back(network_from_json(n));
        for (const json& r : doc.at("records")) e.records_.push_back(record_from_json(r));
        for (const auto& r : e.records_) e.best_history_.push_back(r.best_scores.fitness);
        e.diagnostics_ = doc.at("diagnostics").get<std::vector<std::string>>();
        e.elite_index_ = doc.at("elite_index").get<std::size_t>();
        if (e.population_.empty() || e.elite_index_ >= e.population_.size())
            throw std::invalid_argument("checkpoint population is empty or elite index is invalid");
        if (static_cast<std::size_t>(e.generation_) != e.records_.size())
            throw std::invalid_argument("checkpoint generation does not match its records");
        return e;
    } catch (const json::exception& ex) {
        throw std::invalid_argument(std::string("malformed checkpoint: ") + ex.what());
    }
}

std::vector<GenerationRecord> run(const GaConfig& cfg, const Network& initial,
                                  const MatingObserver& observer) {
    Engine engine(cfg, initial);
    while (!engine.finished()) engine.step(observer);
    return engine.records();
}

Network initial_network(const GaConfig& cfg) {
    Rng rng = make_rng(cfg.seed, Stream::Placement);
    return place_initial(cfg.model, rng);
}

std::vector<GenerationRecord> run(const GaConfig& cfg) {
    require_valid(cfg);
    return run(cfg, initial_network(cfg));
}

std::optional<int> convergence_generation(std::span<const GenerationRecord> records) {
    for (const auto& r : records)
        if (r.converged) return r.generation;
    return std::nullopt;
}

json scores_to_json(const NetworkScores& s) {
    return {{"utilization", s.utilization}, {"cost", s.cost},
            {"reliability", s.reliability}, {"fitness", s.fitness},
            {"redundancy", s.redundancy},   {"pleiotropy", s.pleiotropy}};
}

NetworkScores scores_from_json(const json& j) {
    NetworkScores s;
    s.utilization = j.at("utilization").get<double>();
    s.cost = j.at("cost").get<double>();
    s.reliability = j.at("reliability").get<long long>();
    s.fitness = j.at("fitness").get<double>();
    s.redundancy = j.at("redundancy").get<double>();
    s.pleiotropy = j.at("pleiotropy").get<double>();
    return s;
}

json record_to_json(const GenerationRecord& r) {
    return {{"generation", r.generation},
            {"best_scores", scores_to_json(r.best_scores)},
            {"best_network_digest", r.best_network_digest},
            {"population_fitness", r.population_fitness},
            {"converged", r.converged}};
}

GenerationRecord record_from_json(const json& j) {
    GenerationRecord r;
    r.generation = j.at("generation").get<int>();
    r.best_scores = scores_from_json(j.at("best_scores"));
    r.best_network_digest = j.at("best_network_digest").get<std::string>();
    r.population_fitness = j.at("population_fitness").get<std::vector<double>>();
    r.converged = j.at("converged").get<bool>();
    return r;
}

}  // namespace netevo
