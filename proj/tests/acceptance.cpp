// Acceptance gate: one self-contained check per release criterion, each
// printed as a single [PASS]/[FAIL] line with its pinned tolerances baked in.
// Exit status is the number of failing criteria (0 when the gate is green).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
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
#include "slopelab/point_set.hpp"
#include "slopelab/random_instances.hpp"
#include "slopelab/theta.hpp"

using namespace slopelab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool close_rel(double value, double target, double rel) {
    return std::abs(value - target) <= rel * std::abs(target);
}

// --- criterion 1: averaged-modulus counterexample integrals ----------------
// For delta in {1/2, 1, 2} and the identity gauge, the plateau-decay pair on a
// grid of step t0/200 must integrate to M[g](0) = 6delta/5 and
// M[f](0) = 9delta/10 within 1e-6 relative error, with no grid node satisfying
// the sandwich phi(t) < theta(delta) < psi(t). Budget: under one second.
bool criterion1(std::string& note) {
    const auto start = Clock::now();
    const Theta identity = Theta::identity();
    bool ok = true;
    for (double delta : {0.5, 1.0, 2.0}) {
        const double t0 = 3.0 * delta / (5.0 * identity(delta));
        const AxiomReport report = refute_strong_compat_average(delta, identity, t0 / 200.0);
        const json& w = report.witness;
        ok &= !report.holds;
        ok &= close_rel(w.at("average_g_at_origin").get<double>(), 1.2 * delta, 1e-6);
        ok &= close_rel(w.at("average_f_at_origin").get<double>(), 0.9 * delta, 1e-6);
        ok &= w.at("sandwich_nodes").get<int>() == 0;
        ok &= w.at("delta_sandwich_ok").get<bool>();
    }
    const double secs = seconds_since(start);
    ok &= secs < 1.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "averaged integrals hit 6d/5 and 9d/10 (rel 1e-6), no sandwich node, %.2fs",
                  secs);
    note = buf;
    return ok;
}

// --- criterion 2: integer-chain refutation ----------------------------------
// n_max = 50: T[f_n](1) = 1 exactly for every n >= 2, T[f_1](1) = 0, the chain
// quotients equal 1/(n-1) exactly, and every gauge in the candidate ladder is
// defeated. Budget: under one second.
bool criterion2(std::string& note) {
    const auto start = Clock::now();
    const std::vector<Theta> ladder = {Theta::identity(),  Theta::linear(0.5),
                                       Theta::linear(2.0), Theta::ratio(1.0),
                                       Theta::ratio(0.25), Theta::power(2.0),
                                       Theta::power(0.5)};
    const AxiomReport report = refute_compat_nat(50, 1.0, ladder, 0.5);
    const json& w = report.witness;
    bool ok = !report.holds;
    ok &= w.at("modulus_exact").get<bool>();
    ok &= w.at("quotients_exact").get<bool>();
    ok &= w.at("all_refuted").get<bool>();
    ok &= w.at("gauges").size() == ladder.size();
    const double secs = seconds_since(start);
    ok &= secs < 1.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "integer chain: exact moduli and quotients, all %zu gauges refuted, %.2fs",
                  ladder.size(), secs);
    note = buf;
    return ok;
}

// --- criterion 3: staircase function ----------------------------------------
// Tabulation matches the closed forms (values to 1e-12 relative, central
// differences within twice the grid step on segment interiors), the zero set
// is empty at tolerance 1e-9, the pinned slope value s(2 - 1e-3) = 1e-3 holds
// to 1e-9, and the escape sequence z_n = n+1-1/n (n <= 30) earns all three
// asymptotic-criticality flags with an infimizing gap below 0.05.
bool criterion3(std::string& note) {
    bool ok = true;
    const BlockExample ex = example_block_function(4.0, 13);
    const double h = ex.function.space()->grid_step();
    for (int i = 0; i < ex.function.size(); ++i) {
        const double x = ex.function.space()->coord(i);
        ok &= close_rel(ex.function.value(i), block_value(x), 1e-12);
    }
    for (int i = 1; i + 1 < ex.function.size(); ++i) {
        const double x = ex.function.space()->coord(i);
        if (std::floor(x - h) != std::floor(x) || std::floor(x + h) != std::floor(x)) continue;
        const double fd = (ex.function.value(i - 1) - ex.function.value(i + 1)) / (2.0 * h);
        ok &= std::abs(fd - ex.slope.values[i]) <= 2.0 * h;
    }
    ok &= critical_set(ex.slope, 1e-9).empty();
    ok &= std::abs(block_slope(2.0 - 1e-3) - 1e-3) <= 1e-9;

    std::vector<double> zs, moduli;
    for (int n = 1; n <= 30; ++n) {
        const double z = static_cast<double>(n + 1) - 1.0 / n;
        zs.push_back(z);
        moduli.push_back(block_slope(z));
    }
    const SequenceReport seq = asymptotic_criticality_report_line(zs, moduli);
    ok &= seq.summability_ok && seq.divergence_ok && seq.liminf_zero;
    const InfimizingReport inf = infimizing_check_line(zs, block_value, 0.0, 0.05, {});
    ok &= inf.holds && inf.gap < 0.05;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "staircase table matches closed forms, empty zero set, gap %.4f < 0.05",
                  inf.gap);
    note = buf;
    return ok;
}

// --- criterion 4: level curve of x^2/y --------------------------------------
// For c in {1, 4}: g is constant along gamma(t) = (sqrt(c) t, t^2) to 1e-12,
// the gradient at t = 10 equals (2 sqrt(c)/10, -c/100) to 1e-12, and the
// slope-length integral doubles from horizon 50 to horizon 100 (ratio 2+-0.05).
bool criterion4(std::string& note) {
    bool ok = true;
    const SmoothFunction2D g = SmoothFunction2D::xsq_over_y();
    double worst_ratio_err = 0.0;
    for (double c : {1.0, 4.0}) {
        const LevelCurveReport long_run = example_xsq_over_y(c, 100.0);
        const LevelCurveReport short_run = example_xsq_over_y(c, 50.0);
        ok &= long_run.level_error_max <= 1e-12;
        ok &= short_run.level_error_max <= 1e-12;

        const double rc = std::sqrt(c);
        const Vec2 grad = g.gradient({10.0 * rc, 100.0});
        ok &= std::abs(grad.x - 2.0 * rc / 10.0) <= 1e-12;
        ok &= std::abs(grad.y + c / 100.0) <= 1e-12;

        const double ratio = long_run.curve.total_slope_integral() /
                             short_run.curve.total_slope_integral();
        ok &= std::abs(ratio - 2.0) <= 0.05;
        worst_ratio_err = std::max(worst_ratio_err, std::abs(ratio - 2.0));
        ok &= long_run.diverging;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "level curve exact to 1e-12, gradient pinned, ratio off 2 by %.4f <= 0.05",
                  worst_ratio_err);
    note = buf;
    return ok;
}

// --- criterion 5: axiom suites ----------------------------------------------
// D0, D1, D2, D3 and translation invariance each pass 1000 seeded random
// finite instances under all four paradigms, zero failures, under 30 seconds.
bool criterion5(std::string& note) {
    const auto start = Clock::now();
    const std::vector<std::string> axioms = {"D0", "D1", "D2", "D3", "translation"};
    const std::vector<ModulusKind> paradigms = {ModulusKind::global, ModulusKind::local,
                                                ModulusKind::average, ModulusKind::diffusion};
    bool ok = true;
    std::uint64_t seed = 1000;
    int suites = 0;
    for (const std::string& axiom : axioms)
        for (ModulusKind paradigm : paradigms) {
            const AxiomReport report = run_axiom_suite(axiom, paradigm, seed++, 1000);
            ok &= report.holds && report.trials == 1000;
            ++suites;
        }
    const double secs = seconds_since(start);
    ok &= secs < 30.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d suites x 1000 trials, zero failures, %.2fs < 30s",
                  suites, secs);
    note = buf;
    return ok;
}

// --- criterion 6: determination oracle ---------------------------------------
// Across 24 seeded metric-repaired spaces (twelve 3-point, twelve 4-point) and
// a 4-value grid, every (global-slope profile, min value) class is a
// singleton. Budget: under 60 seconds.
bool criterion6(std::string& note) {
    const auto start = Clock::now();
    InstanceGen gen(2026);
    const std::vector<double> grid = {0.0, 0.25, 0.5, 1.0};
    bool ok = true;
    int spaces = 0;
    long functions = 0;
    for (int n : {3, 4})
        for (int k = 0; k < 12; ++k) {
            const DeterminationReport report = determination_oracle(gen.finite_space(n), grid);
            ok &= report.determined;
            ok &= report.classes == report.functions;
            functions += report.functions;
            ++spaces;
        }
    ok &= spaces >= 20;
    const double secs = seconds_since(start);
    ok &= secs < 60.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%d spaces, %ld functions enumerated, every class a singleton, %.2fs", spaces,
                  functions, secs);
    note = buf;
    return ok;
}

// --- criterion 7: descent engine ---------------------------------------------
// On 1000 seeded finite instances with random g and f == 0, the global-slope
// descent loop reaches a critical point, and every trace replays cleanly:
// strict g-decrease, nondecreasing f - (1+rho)g, running sum within the
// 2(g(x0) - inf g) bound.
bool criterion7(std::string& note) {
    InstanceGen gen(777);
    const ModulusOperator op = ModulusOperator::global();
    bool ok = true;
    long steps = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const SpacePtr space = gen.finite_space(gen.uniform_int(2, 8));
        const ExtendedFunction g = gen.function_on(space);
        const ExtendedFunction f(space, std::vector<double>(space->size(), 0.0));
        const int x0 = gen.uniform_int(0, space->size() - 1);
        const DescentTrace trace = descent_run(f, g, op, x0, 1.0);
        ok &= trace.terminal == DescentTerminal::reached_critical;
        ok &= !verify_trace(trace, f.shifted(trace.shift), g.shifted(trace.shift), op)
                   .has_value();
        steps += static_cast<long>(trace.entries.size());
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "1000 runs reached critical points (%ld steps), all traces replay clean",
                  steps);
    note = buf;
    return ok;
}

// --- criterion 8: smooth comparison ------------------------------------------
// Quadratic g from (1, 0) with dt = 1e-3 to t_max = 10: the f = g/2 inequality
// report holds with slack >= 0, the f = g report has |slack| <= 1e-5, and the
// integrated flow tracks e^-t within 1e-6 at every node.
bool criterion8(std::string& note) {
    const SmoothFunction2D g = SmoothFunction2D::quadratic();
    bool ok = true;

    const FlowComparisonReport half = comparison_along_flow(g.scaled(0.5), g, {1.0, 0.0}, 1e-3, 10.0);
    ok &= half.holds && half.slack >= 0.0;
    const FlowComparisonReport same = comparison_along_flow(g, g, {1.0, 0.0}, 1e-3, 10.0);
    ok &= same.holds && std::abs(same.slack) <= 1e-5;

    const FlowCurve curve = gradient_flow(g, {1.0, 0.0}, 1e-3, 10.0);
    double worst = 0.0;
    for (int i = 0; i < curve.size(); ++i)
        worst = std::max(worst, std::abs(curve.points[i].x - std::exp(-curve.times[i])));
    ok &= worst <= 1e-6;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "slack %.6f >= 0, equality slack %.1e <= 1e-5, flow off e^-t by %.1e <= 1e-6",
                  half.slack, std::abs(same.slack), worst);
    note = buf;
    return ok;
}

// --- criterion 9: composition ------------------------------------------------
// For phi(t) = 2t and phi(t) = t^2 on 100 seeded instances: composing the
// modulus with phi preserves critical sets exactly, and witness sets transfer
// under the gauge pair (theta o phi^-1, phi(delta)).
bool criterion9(std::string& note) {
    InstanceGen gen(4242);
    const ModulusOperator op = ModulusOperator::global();
    const std::vector<Theta> phis = {Theta::linear(2.0), Theta::power(2.0)};
    bool ok = true;
    int transfer_checks = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const SpacePtr space = gen.finite_space(gen.uniform_int(3, 7));
        const ExtendedFunction g = gen.function_on(space);
        const ExtendedFunction f = g.scaled(0.5);
        const ModulusProfile pg = op.apply(g);
        const ModulusProfile pf = op.apply(f);

        for (const Theta& phi : phis) {
            const ModulusProfile composed = compose_modulus(phi, pg);
            ok &= critical_set(pg, 0.0).indices() == critical_set(composed, 0.0).indices();
        }

        for (int x = 0; x < space->size(); ++x) {
            if (!(pg.values[x] > 0.0) || !is_finite(pg.values[x])) continue;
            const double delta = 0.5 * pf.values[x] + 0.5 * pg.values[x];
            for (const Theta& phi : phis) {
                const AxiomReport report =
                    check_witness_transfer(op, phi, 1.0, Theta::identity(), f, g, x, delta);
                ok &= report.holds;
                ++transfer_checks;
            }
            break;
        }
    }
    ok &= transfer_checks == 200;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "100 instances x 2 gauges: critical sets identical, %d witness transfers hold",
                  transfer_checks);
    note = buf;
    return ok;
}

// --- criterion 10: infimizing internal bound ----------------------------------
// On the staircase sequence z_n = n+1-1/n with ten off-sequence samples u, the
// bound f(z_k) <= f(u) + G(z_k) d(z_k, u) holds at every prefix index of the
// decreasing-slope subsequence for every sample.
bool criterion10(std::string& note) {
    std::vector<double> zs;
    for (int n = 1; n <= 30; ++n) zs.push_back(static_cast<double>(n + 1) - 1.0 / n);
    const std::vector<double> us = {1.5,  2.25,  3.25,  4.25,  6.25,
                                    9.25, 12.25, 15.25, 20.25, 27.25};
    const InfimizingReport report = infimizing_check_line(zs, block_value, 0.0, 0.05, us);
    bool ok = report.internal_bound_ok;
    ok &= report.bound_checks ==
          static_cast<long>(us.size()) * static_cast<long>(report.subsequence.size());
    ok &= static_cast<int>(report.subsequence.size()) >= 10;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%ld bound checks over %zu prefix indices x 10 samples, all hold",
                  report.bound_checks, report.subsequence.size());
    note = buf;
    return ok;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        bool (*run)(std::string&);
    };
    const std::vector<Criterion> criteria = {
        {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
        {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        std::string note;
        bool ok = false;
        try {
            ok = c.run(note);
        } catch (const Error& e) {
            note = std::string("unexpected error [") + e.code() + "]: " + e.what();
        } catch (const std::exception& e) {
            note = std::string("unexpected exception: ") + e.what();
        }
        std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", c.id, note.c_str());
        if (!ok) ++failures;
    }
    return failures;
}
