// netevo: evolve client-server topologies from the command line.
//
//   netevo run     [flags]                    single evolution -> trace.csv, final_network.json
//   netevo sweep   table1|table2|custom [...] parameter sweep -> summary.{csv,json}, traces/
//   netevo serve   --port N                   HTTP control service
//   netevo inspect <network.json>             scores of a saved network
//
// Exit codes: 0 success, 1 usage or config error, 2 runtime error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "netevo/experiment.hpp"
#include "netevo/ga.hpp"
#include "netevo/http_service.hpp"
#include "netevo/metrics.hpp"
#include "netevo/network_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace netevo;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigFlags {
    std::optional<std::uint64_t> seed;
    std::optional<int> generations;
    std::optional<int> q;
    std::optional<std::string> link_failure_prob;
    std::optional<std::string> link_repair_prob;
    std::optional<int> n_clients;
    std::optional<int> n_servers;
    std::optional<double> t_max;
    std::optional<double> t_s;
    std::optional<std::string> grid;
    std::optional<double> min_spacing;
    std::optional<std::string> config_file;

    void attach(CLI::App* app) {
        app->add_option("--seed", seed, "Random seed");
        app->add_option("--generations", generations, "Generation budget");
        app->add_option("--q", q, "Parents kept per generation (population (q^2-q)/2+q)");
        app->add_option("--link-failure-prob", link_failure_prob, "Per-step link failure probability (0.01 or 1%)");
        app->add_option("--link-repair-prob", link_repair_prob, "Per-step link repair probability");
        app->add_option("--n-clients", n_clients, "Number of clients");
        app->add_option("--n-servers", n_servers, "Number of initial servers");
        app->add_option("--t-max", t_max, "Upper bound of client traffic");
        app->add_option("--t-s", t_s, "Server capacity");
        app->add_option("--grid", grid, "Grid size as WIDTHxHEIGHT");
        app->add_option("--min-spacing", min_spacing, "Minimum node spacing in grid units");
        app->add_option("--config", config_file, "JSON config file; flags override it");
    }

    GaConfig resolve() const {
        GaConfig cfg;
        if (config_file) {
            std::ifstream in(*config_file);
            if (!in) throw std::runtime_error("cannot read config file " + *config_file);
            json doc;
            try {
                doc = json::parse(in);
            } catch (const json::exception& e) {
                throw UsageError("config file " + *config_file + ": " + e.what());
            }
            cfg = config_from_json(doc);
        }
        try {
            if (seed) cfg.seed = *seed;
            if (generations) cfg.generations = *generations;
            if (q) cfg.q = *q;
            if (link_failure_prob) cfg.link_failure_prob = parse_probability(*link_failure_prob);
            if (link_repair_prob) cfg.link_repair_prob = parse_probability(*link_repair_prob);
            if (n_clients) cfg.model.n_clients = *n_clients;
            if (n_servers) cfg.model.n_servers = *n_servers;
            if (t_max) cfg.model.t_max = *t_max;
            if (t_s) cfg.model.t_s = *t_s;
            if (min_spacing) cfg.model.min_spacing = *min_spacing;
            if (grid) {
                int w = 0, h = 0;
                char x = 0, extra = 0;
                if (std::sscanf(grid->c_str(), "%d%c%d%c", &w, &x, &h, &extra) != 3 || (x != 'x' && x != 'X'))
                    throw UsageError("--grid expects WIDTHxHEIGHT, got '" + *grid + "'");
                cfg.model.grid_width = w;
                cfg.model.grid_height = h;
            }
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        require_valid(cfg);
        return cfg;
    }
};

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_network_with_config(const fs::path& path, const Network& net, const GaConfig& cfg) {
    json doc = network_to_json(net);
    doc["config"] = config_to_json(cfg);
    write_text(path, doc.dump(2) + "\n");
}

int cmd_run(const ConfigFlags& flags, const fs::path& out_dir, std::optional<int> checkpoint_at,
            const std::optional<std::string>& resume) {
    std::optional<Engine> engine;
    GaConfig cfg;
    if (resume) {
        engine.emplace(Engine::restore(json::parse(read_text(*resume))));
        cfg = engine->config();
    } else {
        cfg = flags.resolve();
        engine.emplace(cfg, initial_network(cfg));
    }

    while (!engine->finished()) {
        engine->step();
        if (checkpoint_at && engine->generation() == *checkpoint_at) {
            const fs::path cp = out_dir / ("checkpoint-" + std::to_string(*checkpoint_at) + ".json");
            write_text(cp, engine->checkpoint().dump() + "\n");
        }
    }

    write_text(out_dir / "trace.csv", trace_csv(cfg, engine->records()));
    write_network_with_config(out_dir / "final_network.json", engine->elite(), cfg);
    for (const auto& d : engine->diagnostics()) std::cerr << "note: " << d << "\n";

    const auto& last = engine->records();
    const auto conv = convergence_generation(last);
    std::cout << "generations: " << engine->generation() << "\n";
    if (!last.empty()) std::cout << "best fitness: " << last.back().best_scores.fitness << "\n";
    std::cout << "converged at: " << (conv ? std::to_string(*conv) : "never") << "\n";
    std::cout << "wrote " << (out_dir / "trace.csv").string() << "\n";
    return 0;
}

int cmd_sweep(const ConfigFlags& flags, const std::string& which, const fs::path& out_dir,
              int runs, const std::string& vary, const std::vector<std::string>& values) {
    const GaConfig base = flags.resolve();
    SweepSpec spec;
    if (which == "table1") {
        spec = failure_probability_sweep(base);
    } else if (which == "table2") {
        spec = population_size_sweep(base);
        // An explicit failure probability still wins.
        if (flags.link_failure_prob) spec.base_config.link_failure_prob = base.link_failure_prob;
    } else if (which == "custom") {
        spec.base_config = base;
        if (vary == "link_failure_prob") {
            spec.variable = SweepVariable::LinkFailureProb;
            for (const auto& v : values) spec.values.push_back(parse_probability(v));
        } else if (vary == "q") {
            spec.variable = SweepVariable::PopulationSizeQ;
            for (const auto& v : values) spec.values.push_back(std::stoi(v));
        } else {
            throw UsageError("--vary must be link_failure_prob or q");
        }
        if (spec.values.empty()) throw UsageError("custom sweep needs --values");
    } else {
        throw UsageError("unknown sweep '" + which + "' (expected table1, table2 or custom)");
    }
    if (runs > 0) spec.runs_per_value = runs;
    for (double v : spec.values) require_valid(config_for(spec, v, 0));

    const SweepResult result = run_sweep(spec, out_dir);
    write_sweep_artifacts(result, out_dir);
    std::cout << emit_tables(result.rows, spec.variable, TableFormat::Csv);
    return 0;
}

int cmd_serve(const std::string& host, int port) {
    SessionManager sessions;
    ControlServer server(sessions);
    const int bound = server.bind(host, port);
    if (bound <= 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    std::cout << "listening on http://" << host << ":" << bound << std::endl;
    server.serve();
    return 0;
}

int cmd_inspect(const fs::path& file) {
    const Network net = load_network(file);
    const NetworkScores s = evaluate(net);
    std::cout << "nodes: " << net.node_count() << " (" << net.client_count() << " clients, "
              << net.server_count() << " servers)\n";
    std::cout << "links: " << net.edge_count() << " (" << net.working_edge_count() << " working)\n";
    std::cout << "digest: " << net.digest() << "\n";
    std::cout << "utilization: " << s.utilization << "\n";
    std::cout << "literal_utilization: " << literal_utilization(net) << "\n";
    std::cout << "cost: " << s.cost << "\n";
    std::cout << "reliability: " << s.reliability << "\n";
    std::cout << "fitness: " << s.fitness << "\n";
    std::cout << "redundancy: " << s.redundancy << "\n";
    std::cout << "pleiotropy: " << s.pleiotropy << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evolve client-server network topologies with a genetic algorithm"};
    app.require_subcommand(1);

    ConfigFlags run_flags;
    std::string run_out = ".";
    std::optional<int> checkpoint_at;
    std::optional<std::string> resume;
    auto* run = app.add_subcommand("run", "Run one evolution");
    run_flags.attach(run);
    run->add_option("--out-dir", run_out, "Output directory");
    run->add_option("--checkpoint-at", checkpoint_at, "Write checkpoint-N.json after generation N");
    run->add_option("--resume", resume, "Continue from a checkpoint file");

    ConfigFlags sweep_flags;
    std::string which;
    std::string sweep_out = "sweep-out";
    int runs = 0;
    std::string vary;
    std::vector<std::string> values;
    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
    sweep_flags.attach(sweep);
    sweep->add_option("which", which, "table1, table2 or custom")->required();
    sweep->add_option("--out-dir", sweep_out, "Output directory");
    sweep->add_option("--runs", runs, "Runs per swept value (default 5)");
    sweep->add_option("--vary", vary, "custom: link_failure_prob or q");
    sweep->add_option("--values", values, "custom: values to sweep");

    std::string host = "127.0.0.1";
    int port = 8080;
    auto* serve = app.add_subcommand("serve", "Serve the HTTP control protocol");
    serve->add_option("--port", port, "TCP port (0 picks one)");
    serve->add_option("--host", host, "Bind address");

    std::string inspect_file;
    auto* inspect = app.add_subcommand("inspect", "Print the scores of a network file");
    inspect->add_option("file", inspect_file, "Network document")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*run) return cmd_run(run_flags, run_out, checkpoint_at, resume);
        if (*sweep) return cmd_sweep(sweep_flags, which, sweep_out, runs, vary, values);
        if (*serve) return cmd_serve(host, port);
        if (*inspect) return cmd_inspect(inspect_file);
    } catch (const UsageError& e) {
        std::cerr << "netevo: " << e.what() << "\n";
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "netevo: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "netevo: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
