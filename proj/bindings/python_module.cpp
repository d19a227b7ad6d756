// Python extension: the command layer over a JSON-string boundary. The pure
// package in python/slopelab wraps these with dict-friendly signatures.
#include <pybind11/pybind11.h>

#include <string>

#include "slopelab/cli.hpp"
#include "slopelab/continuum_lab.hpp"
#include "slopelab/errors.hpp"

namespace py = pybind11;

namespace {

slopelab::RunConfig config_from_string(const std::string& config_json) {
    slopelab::json parsed;
    try {
        parsed = slopelab::json::parse(config_json);
    } catch (const slopelab::json::exception& e) {
        throw py::value_error(std::string("config is not valid JSON: ") + e.what());
    }
    return slopelab::RunConfig::from_json(parsed);
}

// Mathematical diagnoses come back inside the envelope; everything the C++
// layer treats as malformed input becomes a Python ValueError.
template <typename Fn>
auto translate_errors(Fn&& fn) {
    try {
        return fn();
    } catch (const slopelab::Error& e) {
        throw py::value_error("[" + e.code() + "] " + e.what());
    }
}

}  // namespace

PYBIND11_MODULE(_slopelab, m) {
    m.doc() = "property-checked experiments on descent moduli (C++ core)";
    m.attr("__version__") = SLOPELAB_VERSION;

    m.def(
        "run_json",
        [](const std::string& config_json) {
            return translate_errors([&] {
                const slopelab::RunConfig cfg = config_from_string(config_json);
                const slopelab::CommandResult result = slopelab::run_command(cfg);
                return py::make_tuple(result.exit_code, result.envelope.dump());
            });
        },
        py::arg("config_json"),
        "Run one command from a JSON config string; returns (exit_code, envelope_json). "
        "Exit code 0 means every asserted property holds; 1 means the envelope "
        "carries a failure witness. Malformed configs raise ValueError.");

    m.def(
        "run_csv",
        [](const std::string& config_json) {
            return translate_errors([&] {
                slopelab::RunConfig cfg = config_from_string(config_json);
                cfg.format = "csv";
                const slopelab::CommandResult result = slopelab::run_command(cfg);
                return py::make_tuple(result.exit_code, result.csv);
            });
        },
        py::arg("config_json"),
        "Run one command and return (exit_code, csv_table). Commands without a "
        "table raise ValueError.");

    m.def(
        "content_hash",
        [](const std::string& config_json) {
            return translate_errors(
                [&] { return slopelab::content_hash(config_from_string(config_json)); });
        },
        py::arg("config_json"),
        "Canonical fnv1a stamp of a config; delivery settings do not count.");

    m.def(
        "default_config",
        [](const std::string& command) {
            slopelab::RunConfig cfg;
            cfg.command = command;
            return cfg.to_json().dump();
        },
        py::arg("command"), "Default config JSON for a command.");

    m.def("block_value", &slopelab::block_value, py::arg("x"),
          "Staircase function value on [1, inf).");
    m.def("block_slope", &slopelab::block_slope, py::arg("x"),
          "Closed-form slope magnitude of the staircase function.");
}
