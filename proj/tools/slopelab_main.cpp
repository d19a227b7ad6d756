// slopelab — property-checked experiments on descent moduli.
//
// Usage:   slopelab <command> [name] [flags]
// Exit codes: 0 every asserted property holds; 1 a property failed (the JSON
// envelope carries the witness); 2 malformed input (message on stderr).

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slopelab/cli.hpp"
#include "slopelab/errors.hpp"

namespace {

slopelab::json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw slopelab::PreconditionError("cannot open config file: " + path);
    try {
        return slopelab::json::parse(in);
    } catch (const slopelab::json::exception& e) {
        throw slopelab::PreconditionError("config file is not valid JSON: " +
                                          std::string(e.what()));
    }
}

void write_output(const slopelab::RunConfig& cfg, const slopelab::CommandResult& result) {
    const std::string body =
        cfg.format == "csv" ? result.csv : result.envelope.dump(2) + "\n";
    if (cfg.output_path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream out(cfg.output_path);
    if (!out) throw slopelab::PreconditionError("cannot open output file: " + cfg.output_path);
    out << body;
}

}  // namespace

int main(int argc, char** argv) {
    using slopelab::RunConfig;

    CLI::App app{"property-checked experiments on descent moduli"};
    app.get_formatter()->column_width(34);

    RunConfig defaults;
    std::string command, positional_name, config_path;
    std::string name = defaults.name, axiom = defaults.axiom, paradigm = defaults.paradigm;
    std::string format = defaults.format, output_path = defaults.output_path;
    std::uint64_t seed = defaults.seed;
    int trials = defaults.trials, points = defaults.points, spaces = defaults.spaces;
    int start = defaults.start, n_max = defaults.n_max, threads = defaults.threads;
    long enumeration_budget = defaults.enumeration_budget;
    long iteration_budget = defaults.iteration_budget;
    long prefix_budget = defaults.prefix_budget;
    double criticality_tol = defaults.criticality_tol, quadrature_tol = defaults.quadrature_tol;
    double tail_tol = defaults.tail_tol, rho = defaults.rho, delta = defaults.delta;
    double c = defaults.c, t_max = defaults.t_max, dt = defaults.dt;
    double x0x = defaults.x0x, x0y = defaults.x0y, reparam_ds = defaults.reparam_ds;
    double x_max = defaults.x_max, gap_tol = defaults.gap_tol;
    std::vector<double> grid_values = defaults.grid_values;
    bool inject_failure = false;

    app.add_option("command", command,
                   "modulus | axioms | descend | sequence | oracle | flow | example | determine")
        ->required();
    app.add_option("instance", positional_name,
                   "instance name (example: xsq-over-y | block | average-fail | nat; "
                   "flow: quadratic | xsq-over-y; descend: zero | half)");
    app.add_option("--name", name, "instance name (overrides the positional)");
    app.add_option("--config", config_path, "JSON file with config fields; flags override it");
    app.add_option("--seed", seed, "RNG seed for generated instances");
    app.add_option("--trials", trials, "instances per axiom suite");
    app.add_option("--modulus", paradigm, "paradigm: global | local | average | diffusion | all");
    app.add_option("--axiom", axiom, "axiom: D0 | D1 | D2 | D3 | translation | all");
    app.add_option("--points", points, "finite-space size / tabulation nodes");
    app.add_option("--spaces", spaces, "spaces in the oracle sweep");
    app.add_option("--start", start, "descent start index (-1 = seeded draw)");
    app.add_option("--rho", rho, "ratio-compatibility parameter");
    app.add_option("--delta", delta, "threshold for the averaged refutation");
    app.add_option("--c", c, "level-curve parameter");
    app.add_option("--tmax", t_max, "integration horizon");
    app.add_option("--dt", dt, "integrator step");
    app.add_option("--x0x", x0x, "flow start, x coordinate");
    app.add_option("--x0y", x0y, "flow start, y coordinate");
    app.add_option("--reparam", reparam_ds, "arc-length resample spacing (0 = off)");
    app.add_option("--xmax", x_max, "staircase tabulation extent");
    app.add_option("--nmax", n_max, "integer-chain size");
    app.add_option("--gap-tol", gap_tol, "infimizing gap tolerance");
    app.add_option("--grid", grid_values, "oracle value grid (space-separated)");
    app.add_option("--criticality-tol", criticality_tol, "profile value treated as a zero");
    app.add_option("--quadrature-tol", quadrature_tol, "integral comparison tolerance");
    app.add_option("--tail-tol", tail_tol, "tail-increment convergence tolerance");
    app.add_option("--enumeration-budget", enumeration_budget, "oracle sweep cap");
    app.add_option("--iteration-budget", iteration_budget, "descent step cap");
    app.add_option("--prefix-budget", prefix_budget, "sequence prefix length");
    app.add_option("--threads", threads, "worker threads (0 = SLOPELAB_THREADS or 1)");
    app.add_option("--output", output_path, "write the report here instead of stdout");
    app.add_option("--format", format, "json | csv");
    app.add_flag("--inject-failure", inject_failure,
                 "append an always-false property (exit-code testing)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        RunConfig cfg;
        slopelab::json file_cfg = slopelab::json::object();
        if (!config_path.empty()) {
            file_cfg = load_config_file(config_path);
            cfg = RunConfig::from_json(file_cfg);
        }

        const auto touched = [&](const std::string& flag) { return app.count(flag) > 0; };
        cfg.command = command;
        if (touched("instance")) cfg.name = positional_name;
        if (touched("--name")) cfg.name = name;
        if (touched("--seed")) cfg.seed = seed;
        if (touched("--trials")) cfg.trials = trials;
        if (touched("--modulus")) cfg.paradigm = paradigm;
        if (touched("--axiom")) cfg.axiom = axiom;
        if (touched("--points")) cfg.points = points;
        if (touched("--spaces")) cfg.spaces = spaces;
        if (touched("--start")) cfg.start = start;
        if (touched("--rho")) cfg.rho = rho;
        if (touched("--delta")) cfg.delta = delta;
        if (touched("--c")) cfg.c = c;
        if (touched("--tmax")) cfg.t_max = t_max;
        if (touched("--dt")) cfg.dt = dt;
        if (touched("--x0x")) cfg.x0x = x0x;
        if (touched("--x0y")) cfg.x0y = x0y;
        if (touched("--reparam")) cfg.reparam_ds = reparam_ds;
        if (touched("--xmax")) cfg.x_max = x_max;
        if (touched("--nmax")) cfg.n_max = n_max;
        if (touched("--gap-tol")) cfg.gap_tol = gap_tol;
        if (touched("--grid")) cfg.grid_values = grid_values;
        if (touched("--criticality-tol")) cfg.criticality_tol = criticality_tol;
        if (touched("--quadrature-tol")) cfg.quadrature_tol = quadrature_tol;
        if (touched("--tail-tol")) cfg.tail_tol = tail_tol;
        if (touched("--enumeration-budget")) cfg.enumeration_budget = enumeration_budget;
        if (touched("--iteration-budget")) cfg.iteration_budget = iteration_budget;
        if (touched("--prefix-budget")) cfg.prefix_budget = prefix_budget;
        if (touched("--threads")) cfg.threads = threads;
        if (touched("--output")) cfg.output_path = output_path;
        if (touched("--format")) cfg.format = format;
        if (inject_failure) cfg.inject_failure = true;

        // Name-aware starting points: x^2/y needs y > 0, and its level-curve
        // story wants a horizon long enough to show the diverging integral.
        if (cfg.command == "flow" && cfg.name == "xsq-over-y") {
            if (!touched("--x0y") && !file_cfg.contains("x0")) cfg.x0y = 1.0;
            // The initial transient is stiff; the default step leaves visible
            // quadrature error in the slope-integral bound.
            if (!touched("--dt") && !file_cfg.contains("dt")) cfg.dt = 1e-4;
        }
        if (cfg.command == "example" && cfg.name == "xsq-over-y" && !touched("--tmax") &&
            !file_cfg.contains("t_max"))
            cfg.t_max = 100.0;

        const slopelab::CommandResult result = slopelab::run_command(cfg);
        write_output(cfg, result);
        return result.exit_code;
    } catch (const slopelab::Error& e) {
        std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
