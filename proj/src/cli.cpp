#include "slopelab/cli.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "slopelab/axioms.hpp"
#include "slopelab/continuum_lab.hpp"
#include "slopelab/descent_engine.hpp"
#include "slopelab/errors.hpp"
#include "slopelab/extended_function.hpp"
#include "slopelab/extended_real.hpp"
#include "slopelab/metric_space.hpp"
#include "slopelab/moduli.hpp"
#include "slopelab/parallel.hpp"
#include "slopelab/point_set.hpp"
#include "slopelab/random_instances.hpp"
#include "slopelab/theta.hpp"

namespace slopelab {

namespace {

const std::set<std::string>& known_commands() {
    static const std::set<std::string> commands = {"modulus", "axioms", "descend",  "sequence",
                                                   "oracle",  "flow",   "example", "determine"};
    return commands;
}

// Errors that *diagnose* a mathematical failure: the run completes with the
// diagnosis as a failed property. Everything else is malformed input.
bool is_diagnosis(const std::string& code) {
    static const std::set<std::string> codes = {"step_too_large",   "hypothesis_failure",
                                                "no_witness",       "infinite_modulus",
                                                "critical_member",  "degenerate_curve",
                                                "critical_point"};
    return codes.count(code) > 0;
}

std::string csv_number(double v) {
    if (v == kInf) return "inf";
    return json(v).dump();
}

void add_property(json& properties, const std::string& name, bool holds,
                  json witness = json()) {
    json entry{{"name", name}, {"holds", holds}};
    if (!holds && !witness.is_null()) entry["witness"] = std::move(witness);
    properties.push_back(std::move(entry));
}

struct Dispatch {
    json payload = json::object();
    std::string csv;
    bool csv_available = false;
};

ModulusKind parse_paradigm(const std::string& name) {
    if (name == "global") return ModulusKind::global;
    if (name == "local") return ModulusKind::local;
    if (name == "average") return ModulusKind::average;
    if (name == "diffusion") return ModulusKind::diffusion;
    throw PreconditionError("unknown modulus paradigm: " + name);
}

// Builds the four-paradigm operator set for one instance; the schedules hang
// off the space diameter so every paradigm sees comparable scales.
std::vector<ModulusOperator> paradigm_operators(const SpacePtr& space, InstanceGen& gen) {
    const double diam = space->diameter();
    std::vector<ModulusOperator> ops;
    ops.push_back(ModulusOperator::global());
    ops.push_back(ModulusOperator::local({diam, diam * 0.5, diam * 0.25}));
    ops.push_back(ModulusOperator::average(gen.weights_on(space)));
    ops.push_back(ModulusOperator::diffusion(gen.weights_on(space), {diam * 2.0, diam, diam * 0.5}));
    return ops;
}

// The staircase escape points z_n = n+1-1/n and the closed-form slope there.
void block_escape_sequence(long length, std::vector<double>& coords,
                           std::vector<double>& moduli) {
    coords.clear();
    moduli.clear();
    for (long n = 1; n <= length; ++n) {
        const double z = static_cast<double>(n + 1) - 1.0 / static_cast<double>(n);
        coords.push_back(z);
        moduli.push_back(block_slope(z));
    }
}

// ---------------------------------------------------------------- subcommands

Dispatch cmd_modulus(const RunConfig& cfg, json& properties) {
    InstanceGen gen(cfg.seed);
    const SpacePtr space = gen.finite_space(cfg.points);
    const ExtendedFunction f = gen.function_on(space, 0.2);
    const std::vector<ModulusOperator> ops = paradigm_operators(space, gen);

    std::vector<ModulusProfile> profiles;
    profiles.resize(ops.size(), ModulusProfile{});
    parallel_for(static_cast<long>(ops.size()), cfg.threads,
                 [&](long i) { profiles[static_cast<std::size_t>(i)] = ops[i].apply(f); });

    json profile_json = json::object();
    json critical_json = json::object();
    for (std::size_t i = 0; i < ops.size(); ++i) {
        profile_json[ops[i].name()] = to_json(profiles[i]);
        critical_json[ops[i].name()] = to_json(critical_set(profiles[i], cfg.criticality_tol));
        add_property(properties, "domain_contained/" + ops[i].name(),
                     modulus_domain(profiles[i], f));
    }

    // Global-slope zeros are exactly the minimizers of f.
    std::vector<int> minimizers;
    for (int i = 0; i < f.size(); ++i)
        if (f.in_domain(i) && f.value(i) == f.finite_min()) minimizers.push_back(i);
    const PointSet zeros = critical_set(profiles[0], 0.0);
    add_property(properties, "global_zeros_are_minimizers", zeros.indices() == minimizers,
                 json{{"zeros", zeros.indices()}, {"minimizers", minimizers}});

    Dispatch d;
    d.payload = json{{"space", to_json(*space)},
                     {"function", to_json(f)},
                     {"profiles", profile_json},
                     {"critical_sets", critical_json}};

    std::ostringstream csv;
    csv << "point";
    for (const ModulusOperator& op : ops) csv << ',' << op.name();
    csv << '\n';
    for (int x = 0; x < f.size(); ++x) {
        csv << x;
        for (const ModulusProfile& p : profiles) csv << ',' << csv_number(p.values[x]);
        csv << '\n';
    }
    d.csv = csv.str();
    d.csv_available = true;
    return d;
}

Dispatch cmd_axioms(const RunConfig& cfg, json& properties) {
    static const std::vector<std::string> all_axioms = {"D0", "D1", "D2", "D3", "translation"};
    static const std::vector<std::string> all_paradigms = {"global", "local", "average",
                                                           "diffusion"};
    std::vector<std::string> axioms =
        cfg.axiom == "all" ? all_axioms : std::vector<std::string>{cfg.axiom};
    std::vector<std::string> paradigms =
        cfg.paradigm == "all" ? all_paradigms : std::vector<std::string>{cfg.paradigm};

    struct Task {
        std::string axiom;
        ModulusKind paradigm;
        std::string label;
    };
    std::vector<Task> tasks;
    for (const std::string& a : axioms)
        for (const std::string& p : paradigms) tasks.push_back({a, parse_paradigm(p), a + "/" + p});

    std::vector<AxiomReport> reports(tasks.size());
    parallel_for(static_cast<long>(tasks.size()), cfg.threads, [&](long i) {
        reports[static_cast<std::size_t>(i)] =
            run_axiom_suite(tasks[static_cast<std::size_t>(i)].axiom,
                            tasks[static_cast<std::size_t>(i)].paradigm,
                            cfg.seed + static_cast<std::uint64_t>(i), cfg.trials);
    });

    json suites = json::array();
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        add_property(properties, tasks[i].label, reports[i].holds, reports[i].witness);
        suites.push_back(reports[i].to_json());
    }
    Dispatch d;
    d.payload = json{{"suites", suites}};
    return d;
}

Dispatch cmd_descend(const RunConfig& cfg, json& properties) {
    InstanceGen gen(cfg.seed);
    const SpacePtr space = gen.finite_space(cfg.points);
    const ExtendedFunction g = gen.function_on(space);
    ExtendedFunction f(space, std::vector<double>(static_cast<std::size_t>(space->size()), 0.0));
    if (cfg.name == "half") {
        f = g.scaled(0.5);
    } else if (!cfg.name.empty() && cfg.name != "zero") {
        throw PreconditionError("descend partner must be 'zero' or 'half', got: " + cfg.name);
    }
    const int x0 = cfg.start >= 0 ? cfg.start : gen.uniform_int(0, space->size() - 1);

    const ModulusOperator op = ModulusOperator::global();
    const DescentTrace trace = descent_run(f, g, op, x0, cfg.rho, cfg.iteration_budget);

    add_property(properties, "reached_critical",
                 trace.terminal == DescentTerminal::reached_critical,
                 json{{"terminal", to_string(trace.terminal)}, {"note", trace.note}});
    const auto replay = verify_trace(trace, f.shifted(trace.shift), g.shifted(trace.shift), op);
    add_property(properties, "trace_replays", !replay.has_value(),
                 replay.has_value() ? *replay : json());

    Dispatch d;
    d.payload = json{{"space", to_json(*space)},
                     {"g", to_json(g)},
                     {"f", to_json(f)},
                     {"start", x0},
                     {"trace", trace.to_json()}};
    d.csv = trace.to_csv();
    d.csv_available = true;
    return d;
}

Dispatch cmd_sequence(const RunConfig& cfg, json& properties) {
    std::vector<double> coords, moduli;
    block_escape_sequence(cfg.prefix_budget, coords, moduli);

    const SequenceReport report = asymptotic_criticality_report_line(
        coords, moduli, -1.0, cfg.tail_tol, cfg.criticality_tol);
    const InfimizingReport infimizing =
        infimizing_check_line(coords, block_value, 0.0, cfg.gap_tol, {});

    add_property(properties, "summability", report.summability_ok,
                 json{{"tail_increment", report.tail_increment}});
    add_property(properties, "gap_divergence", report.divergence_ok,
                 json{{"tail_min_gap", encode_extended(report.tail_min_gap)},
                      {"gap_threshold", report.gap_threshold}});
    add_property(properties, "modulus_liminf_vanishes", report.liminf_zero,
                 json{{"liminf_estimate", report.liminf_estimate}});
    add_property(properties, "infimizing_gap", infimizing.holds,
                 json{{"gap", infimizing.gap}, {"tol", infimizing.tol}});

    Dispatch d;
    d.payload = json{{"sequence", coords},
                     {"report", report.to_json()},
                     {"infimizing", infimizing.to_json()}};
    d.csv = report.to_csv();
    d.csv_available = true;
    return d;
}

Dispatch cmd_oracle(const RunConfig& cfg, json& properties) {
    const double combos =
        std::pow(static_cast<double>(cfg.grid_values.size()), static_cast<double>(cfg.points));
    if (!(combos <= static_cast<double>(cfg.enumeration_budget)))
        throw PreconditionError("oracle sweep exceeds the enumeration budget");

    InstanceGen gen(cfg.seed);
    std::vector<SpacePtr> spaces;
    spaces.reserve(static_cast<std::size_t>(cfg.spaces));
    for (int k = 0; k < cfg.spaces; ++k) spaces.push_back(gen.finite_space(cfg.points));

    std::vector<DeterminationReport> reports(spaces.size());
    parallel_for(static_cast<long>(spaces.size()), cfg.threads, [&](long k) {
        reports[static_cast<std::size_t>(k)] =
            determination_oracle(spaces[static_cast<std::size_t>(k)], cfg.grid_values);
    });

    json sweeps = json::array();
    bool all_determined = true;
    long functions = 0;
    for (std::size_t k = 0; k < reports.size(); ++k) {
        all_determined &= reports[k].determined;
        functions += reports[k].functions;
        sweeps.push_back(json{{"space", to_json(*spaces[k])}, {"report", reports[k].to_json()}});
        add_property(properties, "space_" + std::to_string(k) + "_determined",
                     reports[k].determined, reports[k].collision);
    }

    Dispatch d;
    d.payload = json{{"value_grid", cfg.grid_values},
                     {"functions_enumerated", functions},
                     {"all_determined", all_determined},
                     {"sweeps", sweeps}};
    return d;
}

Dispatch cmd_flow(const RunConfig& cfg, json& properties) {
    SmoothFunction2D g = SmoothFunction2D::quadratic();
    if (cfg.name == "xsq-over-y") {
        g = SmoothFunction2D::xsq_over_y();
    } else if (!cfg.name.empty() && cfg.name != "quadratic") {
        throw PreconditionError("flow function must be 'quadratic' or 'xsq-over-y', got: " +
                                cfg.name);
    }

    const FlowCurve curve = gradient_flow(g, {cfg.x0x, cfg.x0y}, cfg.dt, cfg.t_max);
    const auto violation = flow_invariants(curve, cfg.quadrature_tol);
    add_property(properties, "flow_invariants", !violation.has_value(),
                 violation.has_value() ? *violation : json());

    Dispatch d;
    d.payload = json{{"curve", curve.to_json()}, {"omega_limit", omega_limit_verdict(curve)}};

    if (cfg.reparam_ds > 0.0) {
        const FlowCurve uniform = arc_length_reparam(curve, cfg.reparam_ds);
        double worst_speed = 0.0;
        for (double v : uniform.speeds) worst_speed = std::max(worst_speed, std::abs(v - 1.0));
        add_property(properties, "unit_speed", worst_speed <= 1e-3,
                     json{{"max_speed_error", worst_speed}});
        const IntegrabilityReport integ = integrability_report(uniform, cfg.tail_tol);
        d.payload["uniform_curve"] = uniform.to_json();
        d.payload["integrability"] = integ.to_json();
    }

    d.csv = curve.to_csv();
    d.csv_available = true;
    return d;
}

Dispatch cmd_example(const RunConfig& cfg, json& properties) {
    Dispatch d;
    if (cfg.name == "xsq-over-y") {
        const LevelCurveReport report = example_xsq_over_y(cfg.c, cfg.t_max);
        add_property(properties, "level_curve_exact", report.level_error_max <= 1e-12,
                     json{{"level_error_max", report.level_error_max}});
        add_property(properties, "gradient_vanishes", report.slope_end < report.slope_start,
                     json{{"slope_start", report.slope_start}, {"slope_end", report.slope_end}});
        add_property(properties, "slope_integral_diverges", report.diverging,
                     json{{"tail_increment", report.tail_increment}});
        d.payload = report.to_json();
        d.csv = report.curve.to_csv();
        d.csv_available = true;
        return d;
    }
    if (cfg.name == "block") {
        const BlockExample ex = example_block_function(cfg.x_max, cfg.points);
        bool table_ok = true;
        for (int i = 0; i < ex.function.size(); ++i) {
            const double x = ex.function.space()->coord(i);
            table_ok &= std::abs(ex.function.value(i) - block_value(x)) <=
                        1e-12 * std::abs(block_value(x));
        }
        add_property(properties, "table_matches_closed_form", table_ok);
        add_property(properties, "zero_set_empty",
                     critical_set(ex.slope, cfg.criticality_tol).empty());

        std::vector<double> coords, moduli;
        block_escape_sequence(30, coords, moduli);
        const SequenceReport seq = asymptotic_criticality_report_line(
            coords, moduli, -1.0, cfg.tail_tol, cfg.criticality_tol);
        add_property(properties, "escape_sequence_flags", seq.all_flags());
        const InfimizingReport infimizing =
            infimizing_check_line(coords, block_value, 0.0, cfg.gap_tol, {});
        add_property(properties, "infimizing_gap", infimizing.holds,
                     json{{"gap", infimizing.gap}, {"tol", infimizing.tol}});

        d.payload = json{{"function", to_json(ex.function)},
                         {"slope", to_json(ex.slope)},
                         {"escape_sequence", seq.to_json()},
                         {"infimizing", infimizing.to_json()}};
        std::ostringstream csv;
        csv << "x,g,slope\n";
        for (int i = 0; i < ex.function.size(); ++i) {
            const double x = ex.function.space()->coord(i);
            csv << csv_number(x) << ',' << csv_number(ex.function.value(i)) << ','
                << csv_number(ex.slope.values[i]) << '\n';
        }
        d.csv = csv.str();
        d.csv_available = true;
        return d;
    }
    if (cfg.name == "average-fail") {
        const Theta identity = Theta::identity();
        const double t0 = 3.0 * cfg.delta / (5.0 * identity(cfg.delta));
        const AxiomReport report =
            refute_strong_compat_average(cfg.delta, identity, t0 / 200.0);
        add_property(properties, "refutation_valid",
                     report.witness.at("refutation_valid").get<bool>(), report.witness);
        add_property(properties, "no_sandwich_witness", !report.holds,
                     json{{"sandwich_nodes", report.witness.at("sandwich_nodes")}});
        d.payload = report.to_json();
        return d;
    }
    if (cfg.name == "nat") {
        const std::vector<Theta> ladder = {Theta::identity(),  Theta::linear(0.5),
                                           Theta::linear(2.0), Theta::ratio(1.0),
                                           Theta::ratio(0.25), Theta::power(2.0),
                                           Theta::power(0.5)};
        const AxiomReport report = refute_compat_nat(cfg.n_max, cfg.rho, ladder, 0.5);
        add_property(properties, "exact_moduli", report.witness.at("modulus_exact").get<bool>());
        add_property(properties, "exact_quotients",
                     report.witness.at("quotients_exact").get<bool>());
        add_property(properties, "all_gauges_refuted",
                     report.witness.at("all_refuted").get<bool>(), report.witness.at("gauges"));
        d.payload = report.to_json();
        return d;
    }
    throw PreconditionError(
        "unknown example (expected xsq-over-y, block, average-fail, or nat): " + cfg.name);
}

Dispatch cmd_determine(const RunConfig& cfg, json& properties) {
    InstanceGen gen(cfg.seed);
    const SpacePtr space = gen.finite_space(cfg.points);
    const ExtendedFunction g = gen.function_on(space);
    const ExtendedFunction f = g.scaled(0.5);
    const ModulusOperator op = ModulusOperator::global();

    const ComparisonReport comparison = comparison_check(f, g, op, cfg.rho, cfg.criticality_tol);
    add_property(properties, "comparison_hypotheses", comparison.hypotheses_hold,
                 comparison.details);
    add_property(properties, "comparison_conclusion", comparison.conclusion_observed,
                 comparison.details);

    const ExistenceReport existence =
        critical_existence(g, op, cfg.prefix_budget, cfg.criticality_tol);
    add_property(properties, "existence_resolved", existence.verdict != "inconclusive",
                 json{{"verdict", existence.verdict}});

    Dispatch d;
    d.payload = json{{"space", to_json(*space)},
                     {"g", to_json(g)},
                     {"comparison", comparison.to_json()},
                     {"existence", existence.to_json()}};
    return d;
}

}  // namespace

// ----------------------------------------------------------------- RunConfig

void RunConfig::validate() const {
    if (!known_commands().count(command)) throw PreconditionError("unknown command: " + command);
    if (format != "json" && format != "csv")
        throw PreconditionError("format must be json or csv, got: " + format);
    if (!(criticality_tol > 0.0) || !(quadrature_tol > 0.0) || !(tail_tol > 0.0))
        throw PreconditionError("all tolerances must be positive");
    if (enumeration_budget < 1 || iteration_budget < 1 || prefix_budget < 1)
        throw PreconditionError("all budgets must be at least 1");
    if (trials < 1) throw PreconditionError("trials must be at least 1");
    if (points < 2) throw PreconditionError("instances need at least 2 points");
    if (spaces < 1) throw PreconditionError("the oracle sweep needs at least 1 space");
    if (n_max < 3) throw PreconditionError("n_max must be at least 3");
    if (!(rho > 0.0)) throw PreconditionError("rho must be positive");
    if (!(delta > 0.0)) throw PreconditionError("delta must be positive");
    if (!(c > 0.0)) throw PreconditionError("c must be positive");
    if (!(dt > 0.0)) throw PreconditionError("dt must be positive");
    if (!(t_max > 0.0)) throw PreconditionError("t_max must be positive");
    if (!(gap_tol > 0.0)) throw PreconditionError("gap_tol must be positive");
    if (reparam_ds < 0.0) throw PreconditionError("reparam_ds must be nonnegative");
    if (grid_values.empty()) throw PreconditionError("the value grid must be non-empty");
    if (threads < 0) throw PreconditionError("threads must be nonnegative");
}

json RunConfig::to_json() const {
    return json{{"command", command},
                {"seed", seed},
                {"inject_failure", inject_failure},
                {"criticality_tol", criticality_tol},
                {"quadrature_tol", quadrature_tol},
                {"tail_tol", tail_tol},
                {"enumeration_budget", enumeration_budget},
                {"iteration_budget", iteration_budget},
                {"prefix_budget", prefix_budget},
                {"points", points},
                {"spaces", spaces},
                {"start", start},
                {"trials", trials},
                {"axiom", axiom},
                {"paradigm", paradigm},
                {"name", name},
                {"rho", rho},
                {"delta", delta},
                {"c", c},
                {"t_max", t_max},
                {"dt", dt},
                {"x0", json::array({x0x, x0y})},
                {"reparam_ds", reparam_ds},
                {"x_max", x_max},
                {"n_max", n_max},
                {"gap_tol", gap_tol},
                {"grid_values", grid_values}};
}

RunConfig RunConfig::from_json(const json& j) {
    if (!j.is_object()) throw PreconditionError("config must be a JSON object");
    static const std::set<std::string> known = {
        "command",       "seed",         "format",           "output_path",
        "inject_failure", "criticality_tol", "quadrature_tol", "tail_tol",
        "enumeration_budget", "iteration_budget", "prefix_budget", "points",
        "spaces",        "start",        "trials",           "axiom",
        "paradigm",      "name",         "rho",              "delta",
        "c",             "t_max",        "dt",               "x0",
        "reparam_ds",    "x_max",        "n_max",            "gap_tol",
        "grid_values",   "threads"};
    for (const auto& item : j.items())
        if (!known.count(item.key()))
            throw PreconditionError("unknown config field: " + item.key());

    RunConfig cfg;
    auto read = [&](const char* key, auto& out) {
        if (!j.contains(key)) return;
        try {
            out = j.at(key).get<std::decay_t<decltype(out)>>();
        } catch (const json::exception&) {
            throw PreconditionError(std::string("config field has the wrong type: ") + key);
        }
    };
    read("command", cfg.command);
    read("seed", cfg.seed);
    read("format", cfg.format);
    read("output_path", cfg.output_path);
    read("inject_failure", cfg.inject_failure);
    read("criticality_tol", cfg.criticality_tol);
    read("quadrature_tol", cfg.quadrature_tol);
    read("tail_tol", cfg.tail_tol);
    read("enumeration_budget", cfg.enumeration_budget);
    read("iteration_budget", cfg.iteration_budget);
    read("prefix_budget", cfg.prefix_budget);
    read("points", cfg.points);
    read("spaces", cfg.spaces);
    read("start", cfg.start);
    read("trials", cfg.trials);
    read("axiom", cfg.axiom);
    read("paradigm", cfg.paradigm);
    read("name", cfg.name);
    read("rho", cfg.rho);
    read("delta", cfg.delta);
    read("c", cfg.c);
    read("t_max", cfg.t_max);
    read("dt", cfg.dt);
    if (j.contains("x0")) {
        const json& x0 = j.at("x0");
        if (!x0.is_array() || x0.size() != 2 || !x0[0].is_number() || !x0[1].is_number())
            throw PreconditionError("config field x0 must be a [x, y] number pair");
        cfg.x0x = x0[0].get<double>();
        cfg.x0y = x0[1].get<double>();
    }
    read("reparam_ds", cfg.reparam_ds);
    read("x_max", cfg.x_max);
    read("n_max", cfg.n_max);
    read("gap_tol", cfg.gap_tol);
    read("grid_values", cfg.grid_values);
    read("threads", cfg.threads);
    return cfg;
}

std::string content_hash(const RunConfig& config) {
    const std::string bytes = config.to_json().dump();
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

CommandResult run_command(const RunConfig& config) {
    config.validate();

    json properties = json::array();
    Dispatch dispatch;
    try {
        if (config.command == "modulus") dispatch = cmd_modulus(config, properties);
        else if (config.command == "axioms") dispatch = cmd_axioms(config, properties);
        else if (config.command == "descend") dispatch = cmd_descend(config, properties);
        else if (config.command == "sequence") dispatch = cmd_sequence(config, properties);
        else if (config.command == "oracle") dispatch = cmd_oracle(config, properties);
        else if (config.command == "flow") dispatch = cmd_flow(config, properties);
        else if (config.command == "example") dispatch = cmd_example(config, properties);
        else dispatch = cmd_determine(config, properties);
    } catch (const Error& e) {
        if (!is_diagnosis(e.code())) throw;
        add_property(properties, "run_completed", false,
                     json{{"error", e.code()}, {"message", e.what()}});
    }

    if (config.inject_failure)
        add_property(properties, "injected-failure", false,
                     json{{"reason", "deliberate failure injection for exit-code testing"}});

    if (config.format == "csv" && !dispatch.csv_available)
        throw PreconditionError("command '" + config.command + "' has no CSV table");

    bool ok = true;
    for (const json& p : properties) ok &= p.at("holds").get<bool>();

    CommandResult result;
    result.exit_code = ok ? 0 : 1;
    result.csv = std::move(dispatch.csv);
    result.csv_available = dispatch.csv_available;
    result.envelope = json{{"schema", "slopelab/1"},
                           {"command", config.command},
                           {"config", config.to_json()},
                           {"content_hash", content_hash(config)},
                           {"properties", properties},
                           {"ok", ok},
                           {"report", dispatch.payload}};
    return result;
}

}  // namespace slopelab
