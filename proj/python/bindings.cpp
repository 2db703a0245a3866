#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "netevo/apsp.hpp"
#include "netevo/experiment.hpp"
#include "netevo/ga.hpp"
#include "netevo/metrics.hpp"
#include "netevo/network_io.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

netevo::GaConfig config_of(const std::string& patch) {
    return netevo::config_from_json(patch.empty() ? json::object() : json::parse(patch));
}

std::string records_json(const std::vector<netevo::GenerationRecord>& records) {
    json out = json::array();
    for (const auto& r : records) out.push_back(netevo::record_to_json(r));
    return out.dump();
}

}  // namespace

// Documents cross the boundary as JSON text; the Python package decodes them.
PYBIND11_MODULE(_core, m) {
    m.doc() = "netevo core bindings";

    py::register_exception<netevo::ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<netevo::PlacementError>(m, "PlacementError", PyExc_RuntimeError);

    m.def("default_config", [] { return netevo::config_to_json(netevo::GaConfig{}).dump(); });
    m.def("population_size", &netevo::population_size, py::arg("q"));

    m.def("initial_network", [](const std::string& cfg) {
        const netevo::GaConfig c = config_of(cfg);
        netevo::require_valid(c);
        return netevo::network_to_string(netevo::initial_network(c));
    });

    m.def("evaluate", [](const std::string& network) {
        return netevo::scores_to_json(netevo::evaluate(netevo::network_from_string(network))).dump();
    });

    m.def("shortest_distances", [](const std::string& network) {
        const netevo::DistanceMatrix d = netevo::shortest_distances(netevo::network_from_string(network));
        std::vector<std::uint32_t> ids;
        for (const auto& id : d.index) ids.push_back(id.value);
        std::vector<std::vector<double>> rows(d.size(), std::vector<double>(d.size()));
        for (std::size_t i = 0; i < d.size(); ++i)
            for (std::size_t j = 0; j < d.size(); ++j) rows[i][j] = d.d(i, j);
        return py::make_tuple(ids, rows);
    });

    m.def("run", [](const std::string& cfg) {
        const netevo::GaConfig c = config_of(cfg);
        netevo::require_valid(c);
        std::vector<netevo::GenerationRecord> records;
        {
            py::gil_scoped_release release;
            records = netevo::run(c);
        }
        return records_json(records);
    });

    m.def(
        "sweep",
        [](const std::string& which, const std::string& cfg, int runs, std::vector<double> values,
           const std::string& out_dir) {
            if (which != "table1" && which != "table2")
                throw std::invalid_argument("sweep must be 'table1' or 'table2'");
            const netevo::GaConfig base = config_of(cfg);
            netevo::SweepSpec spec = which == "table2" ? netevo::population_size_sweep(base)
                                                       : netevo::failure_probability_sweep(base);
            if (runs > 0) spec.runs_per_value = runs;
            if (!values.empty()) spec.values = std::move(values);
            for (double v : spec.values) netevo::require_valid(netevo::config_for(spec, v, 0));
            netevo::SweepResult result;
            {
                py::gil_scoped_release release;
                std::optional<std::filesystem::path> dir;
                if (!out_dir.empty()) dir = out_dir;
                result = netevo::run_sweep(spec, dir);
                if (dir) netevo::write_sweep_artifacts(result, *dir);
            }
            return py::make_tuple(
                netevo::emit_tables(result.rows, spec.variable, netevo::TableFormat::Json),
                netevo::emit_tables(result.rows, spec.variable, netevo::TableFormat::Csv));
        },
        py::arg("which"), py::arg("config"), py::arg("runs") = 0, py::arg("values") = std::vector<double>{},
        py::arg("out_dir") = "");
}
