#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "slopelab/descent_engine.hpp"
#include "slopelab/errors.hpp"
#include "slopelab/extended_real.hpp"
#include "slopelab/random_instances.hpp"

using namespace slopelab;

namespace {

SpacePtr chain3() { return MetricSpace::finite({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}); }

SpacePtr chain4() {
    return MetricSpace::finite({{0, 1, 2, 3}, {1, 0, 1, 2}, {2, 1, 0, 1}, {3, 2, 1, 0}});
}

// Staircase profile: value 1/(n+1) + (x-(n+1))^(n(n+1)) / (n(n+1)) on block
// [n, n+1); slope magnitude (n+1-x)^(n(n+1)-1), clamped away from exact zero
// where pow underflows.
double staircase_value(double x) {
    const int n = static_cast<int>(std::floor(x));
    const double k = static_cast<double>(n) * (n + 1.0);
    return 1.0 / (n + 1.0) + std::pow(x - (n + 1.0), k) / k;
}

double staircase_slope(double x) {
    const int n = static_cast<int>(std::floor(x));
    const double k = static_cast<double>(n) * (n + 1.0);
    double s = std::pow((n + 1.0) - x, k - 1.0);
    if (s == 0.0) s = std::numeric_limits<double>::denorm_min();
    return s;
}

// z_n = n+1 - 1/n for n = 1..count: one point per block, drifting right while
// the slope collapses.
std::vector<double> staircase_sequence(int count) {
    std::vector<double> coords;
    for (int n = 1; n <= count; ++n)
        coords.push_back(static_cast<double>(n) + 1.0 - 1.0 / static_cast<double>(n));
    return coords;
}

int count_lines(const std::string& text) {
    int lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    return lines;
}

}  // namespace

// ---------------------------------------------------------------------------
// delta_mix
// ---------------------------------------------------------------------------

TEST_CASE("delta_mix midpoints and failure modes") {
    CHECK(delta_mix(0.5, 2.0, 0) == 1.25);
    CHECK(delta_mix(3.0, 3.0, 0) == 3.0);
    // Staircase numbers at x = 1.5 with a flat reference: T[f] = 0, T[g] = 0.5.
    CHECK(staircase_slope(1.5) == 0.5);
    CHECK(delta_mix(0.0, staircase_slope(1.5), 0) == 0.25);
    CHECK_THROWS_AS(delta_mix(kInf, 1.0, 3), InfiniteModulus);
    CHECK_THROWS_AS(delta_mix(1.0, kInf, 3), InfiniteModulus);

    ExtendedFunction g(chain3(), {2.0, 1.0, 0.0});
    ExtendedFunction f(chain3(), {0.0, 0.0, 0.0});
    const ModulusProfile pf = global_slope(f);
    const ModulusProfile pg = global_slope(g);
    CHECK(delta_mix(pf, pg, 0) == 0.5);

    ExtendedFunction h(chain3(), {kInf, 0.0, 0.0});
    CHECK_THROWS_AS(delta_mix(global_slope(h), pg, 0), InfiniteModulus);
}

// ---------------------------------------------------------------------------
// descent_step
// ---------------------------------------------------------------------------

TEST_CASE("descent_step picks the widest admissible witness") {
    ExtendedFunction g(chain3(), {2.0, 1.0, 0.0});
    ExtendedFunction f(chain3(), {0.0, 0.0, 0.0});
    const ModulusOperator op = ModulusOperator::global();

    CHECK(descent_step(f, g, op, 0, 0.1) == 2);
    CHECK_THROWS_AS(descent_step(f, g, op, 2, 0.1), CriticalPoint);
    // T[f] = T[g] leaves no room for the threshold.
    CHECK_THROWS_AS(descent_step(g, g, op, 0, 0.1), PreconditionError);
    CHECK_THROWS_AS(descent_step(f, g, op, 7, 0.1), DomainError);
}

// ---------------------------------------------------------------------------
// descent_run
// ---------------------------------------------------------------------------

TEST_CASE("descent_run on the 3-chain: one step to the minimizer") {
    ExtendedFunction g(chain3(), {2.0, 1.0, 0.0});
    ExtendedFunction f(chain3(), {0.0, 0.0, 0.0});
    const ModulusOperator op = ModulusOperator::global();

    const DescentTrace trace = descent_run(f, g, op, 0, 0.1);
    CHECK(trace.terminal == DescentTerminal::reached_critical);
    CHECK(trace.shift == 1.0);
    REQUIRE(trace.entries.size() == 1);
    const DescentEntry& e = trace.entries[0];
    CHECK(e.point == 0);
    CHECK(e.g_value == 3.0);
    CHECK(e.f_value == 1.0);
    CHECK(e.delta == 0.5);
    CHECK(e.step_distance == 2.0);
    CHECK(e.running_sum == 2.0);
    CHECK(trace.terminal_point == 2);
    CHECK(trace.terminal_g == 1.0);
    CHECK(trace.terminal_delta == 0.0);
    CHECK(trace.length_bound == 4.0);
    CHECK(trace.total_length() <= trace.length_bound);

    // The stored invariants replay against the shifted functions.
    CHECK(!verify_trace(trace, f.shifted(trace.shift), g.shifted(trace.shift), op).has_value());
}

TEST_CASE("descent_run multi-step, budget stop, and empty trace") {
    ExtendedFunction g(chain4(), {3.0, 1.0, 0.875, 0.75});
    ExtendedFunction f(chain4(), {0.0, 0.0, 0.0, 0.0});
    const ModulusOperator op = ModulusOperator::global();

    SUBCASE("two steps: the far minimizer is blocked by the threshold clause") {
        const DescentTrace trace = descent_run(f, g, op, 0, 0.1);
        CHECK(trace.terminal == DescentTerminal::reached_critical);
        REQUIRE(trace.entries.size() == 2);
        CHECK(trace.entries[0].point == 0);
        CHECK(trace.entries[0].step_distance == 2.0);  // p0 -> p2, not p3
        CHECK(trace.entries[1].point == 2);
        CHECK(trace.entries[1].running_sum == 4.125);
        CHECK(trace.terminal_point == 3);
        CHECK(trace.length_bound == 4.5);
    }

    SUBCASE("budget of one step stops early") {
        const DescentTrace trace = descent_run(f, g, op, 0, 0.1, 1);
        CHECK(trace.terminal == DescentTerminal::budget_exhausted);
        CHECK(trace.entries.size() == 1);
        CHECK(trace.terminal_point == 2);
    }

    SUBCASE("starting at a critical point yields an empty trace") {
        const DescentTrace trace = descent_run(f, g, op, 3, 0.1);
        CHECK(trace.terminal == DescentTerminal::reached_critical);
        CHECK(trace.entries.empty());
        CHECK(trace.terminal_point == 3);
        CHECK(trace.total_length() == 0.0);
    }
}

TEST_CASE("descent_run converts assumption failures into terminal statuses") {
    ExtendedFunction g(chain3(), {2.0, 1.0, 0.0});
    const ModulusOperator op = ModulusOperator::global();

    SUBCASE("f = g: moduli not sandwiched") {
        const DescentTrace trace = descent_run(g, g, op, 0, 0.1);
        CHECK(trace.terminal == DescentTerminal::monotonicity_broken);
        CHECK(trace.entries.empty());
        CHECK(trace.note == "precondition_error");
        CHECK(trace.terminal_point == 0);
    }

    SUBCASE("f infinite at the start: infinite modulus") {
        ExtendedFunction f(chain3(), {kInf, 0.0, 0.0});
        const DescentTrace trace = descent_run(f, g, op, 0, 0.1);
        CHECK(trace.terminal == DescentTerminal::monotonicity_broken);
        CHECK(trace.note == "infinite_modulus");
    }

    SUBCASE("starting off dom g") {
        ExtendedFunction f(chain3(), {0.0, 0.0, 0.0});
        ExtendedFunction gg(chain3(), {2.0, kInf, 0.0});
        CHECK_THROWS_AS(descent_run(f, gg, op, 1, 0.1), DomainError);
    }
}

TEST_CASE("verify_trace flags tampered traces") {
    ExtendedFunction g(chain3(), {2.0, 1.0, 0.0});
    ExtendedFunction f(chain3(), {0.0, 0.0, 0.0});
    const ModulusOperator op = ModulusOperator::global();
    const ExtendedFunction gs = g.shifted(1.0);
    const ExtendedFunction fs = f.shifted(1.0);

    DescentTrace trace = descent_run(f, g, op, 0, 0.1);

    SUBCASE("tampered entry value") {
        trace.entries[0].g_value = 2.5;
        auto violation = verify_trace(trace, fs, gs, op);
        REQUIRE(violation.has_value());
        CHECK((*violation)["invariant"] == "entry_consistency");
    }

    SUBCASE("tampered running sum") {
        trace.entries[0].running_sum = 1.0;
        auto violation = verify_trace(trace, fs, gs, op);
        REQUIRE(violation.has_value());
        CHECK((*violation)["invariant"] == "running_sum");
    }

    SUBCASE("tampered length bound") {
        trace.length_bound = 1.0;
        auto violation = verify_trace(trace, fs, gs, op);
        REQUIRE(violation.has_value());
        CHECK((*violation)["invariant"] == "length_bound");
    }
}

TEST_CASE("descent traces serialize to JSON and CSV") {
    ExtendedFunction g(chain3(), {2.0, 1.0, 0.0});
    ExtendedFunction f(chain3(), {0.0, 0.0, 0.0});
    const DescentTrace trace = descent_run(f, g, ModulusOperator::global(), 0, 0.1);

    const json j = trace.to_json();
    CHECK(j["terminal"] == "reached_critical");
    CHECK(j["terminal_point"] == 2);
    CHECK(j["entries"].size() == 1);
    CHECK(j["entries"][0]["delta"] == 0.5);
    CHECK(j["total_length"] == 2.0);

    const std::string csv = trace.to_csv();
    CHECK(count_lines(csv) == 3);  // header + one step + terminal row
    CHECK(csv.rfind("step,point,g,f,delta,step_distance,running_sum\n", 0) == 0);
    CHECK(csv.find("0,0,3.0,1.0,0.5,2.0,2.0\n") != std::string::npos);
    CHECK(csv.find("1,2,1.0,1.0,0.0,0.0,2.0\n") != std::string::npos);
}

// ---------------------------------------------------------------------------
// monotone_subsequence
// ---------------------------------------------------------------------------

TEST_CASE("monotone subsequence extraction") {
    CHECK(monotone_subsequence({3, 5, 2, 4, 1}) == std::vector<int>{0, 2, 4});
    CHECK(monotone_subsequence({1, 2, 3}) == std::vector<int>{0});
    CHECK(monotone_subsequence({7}) == std::vector<int>{0});
    CHECK_THROWS_AS(monotone_subsequence({}), PreconditionError);
}

// ---------------------------------------------------------------------------
// asymptotic criticality
// ---------------------------------------------------------------------------

TEST_CASE("staircase sequence z_n = n+1-1/n earns all three flags") {
    const std::vector<double> coords = staircase_sequence(30);
    std::vector<double> slopes;
    for (double z : coords) slopes.push_back(staircase_slope(z));

    const SequenceReport report = asymptotic_criticality_report_line(coords, slopes);
    CHECK(report.summability_ok);
    CHECK(report.divergence_ok);
    CHECK(report.liminf_zero);
    CHECK(report.all_flags());
    CHECK(report.partial_sums.size() == coords.size());
    CHECK(report.liminf_estimate == staircase_slope(coords.back()));
    // The separation threshold came from the first-quarter gaps: half of
    // 1 + 1/6 - 1/7 at its smallest.
    CHECK(report.gap_threshold == doctest::Approx(0.5 * (1.0 + 1.0 / 6.0 - 1.0 / 7.0)));
}

TEST_CASE("integer sequence on the staircase fails summability") {
    std::vector<double> coords;
    for (int n = 1; n <= 30; ++n) coords.push_back(static_cast<double>(n));
    std::vector<double> slopes(coords.size(), 1.0);  // unit slope at block starts

    const SequenceReport report = asymptotic_criticality_report_line(coords, slopes);
    CHECK(!report.summability_ok);
    CHECK(report.divergence_ok);
    CHECK(!report.liminf_zero);
    CHECK(!report.all_flags());
}

TEST_CASE("constant sequence fails divergence") {
    const std::vector<double> coords(12, 2.5);
    const std::vector<double> slopes(12, 0.5);
    const SequenceReport report = asymptotic_criticality_report_line(coords, slopes);
    CHECK(report.summability_ok);  // zero-length steps add nothing
    CHECK(!report.divergence_ok);
    CHECK(!report.liminf_zero);
}

TEST_CASE("sequence analysis guards") {
    CHECK_THROWS_AS(analyze_sequence({1.0}, [](int, int) { return 1.0; }), PreconditionError);
    CHECK_THROWS_AS(analyze_sequence({1.0, 0.0}, [](int, int) { return 1.0; }), CriticalMember);
    try {
        analyze_sequence({1.0, 1.0, 0.0}, [](int, int) { return 1.0; });
        CHECK(false);
    } catch (const CriticalMember& e) {
        CHECK(e.index == 2);
    }

    ExtendedFunction g(chain3(), {2.0, kInf, 0.0});
    CHECK_THROWS_AS(
        asymptotic_criticality_report({0, 1}, g, ModulusOperator::global()), DomainError);
    // Sequence hitting the minimizer: critical member.
    ExtendedFunction h(chain3(), {2.0, 1.0, 0.0});
    CHECK_THROWS_AS(
        asymptotic_criticality_report({0, 2}, h, ModulusOperator::global()), CriticalMember);
}

TEST_CASE("sequence reports serialize") {
    const std::vector<double> coords = staircase_sequence(8);
    std::vector<double> slopes;
    for (double z : coords) slopes.push_back(staircase_slope(z));
    const SequenceReport report = asymptotic_criticality_report_line(coords, slopes);

    const json j = report.to_json();
    CHECK(j["modulus_values"].size() == 8);
    CHECK(j["partial_sums"].size() == 8);
    CHECK(j.contains("summability_ok"));

    const std::string csv = report.to_csv();
    CHECK(count_lines(csv) == 9);  // header + one row per point
    CHECK(csv.rfind("index,modulus,gap_to_next,partial_sum\n", 0) == 0);
}

// ---------------------------------------------------------------------------
// cauchy_check
// ---------------------------------------------------------------------------

TEST_CASE("geometric sequence z_n = 1 - 2^-n satisfies the tail bound exactly") {
    std::vector<double> coords;
    for (int n = 0; n <= 30; ++n) coords.push_back(1.0 - std::ldexp(1.0, -n));
    const std::vector<double> slopes(coords.size(), 1.0);  // global slope of g(x) = -x

    const CauchyReport report = cauchy_check(
        slopes, [&coords](int i, int j) { return std::abs(coords[i] - coords[j]); }, 1.0);
    CHECK(report.holds);
    CHECK(report.start_index == 0);
    CHECK(report.min_slack == 0.0);  // collinear points: the bound is tight
    CHECK(report.checked_pairs == 31 * 30 / 2);
}

TEST_CASE("alternating two-point sequence fails the summability precondition") {
    std::vector<double> coords;
    for (int n = 0; n < 20; ++n) coords.push_back(n % 2 == 0 ? 0.0 : 1.0);
    const std::vector<double> slopes(coords.size(), 1.0);
    CHECK_THROWS_AS(cauchy_check(
                        slopes, [&coords](int i, int j) { return std::abs(coords[i] - coords[j]); },
                        0.5),
                    PreconditionError);
}

TEST_CASE("cauchy_check rejects a modulus sinking below delta") {
    std::vector<double> slopes;
    for (int n = 0; n < 16; ++n) slopes.push_back(1.0 / (n + 1.0));
    CHECK_THROWS_AS(cauchy_check(slopes, [](int, int) { return 0.0; }, 0.5), PreconditionError);
    CHECK_THROWS_AS(cauchy_check(slopes, [](int, int) { return 0.0; }, 0.0), PreconditionError);
}

TEST_CASE("cauchy_check through a modeled grid") {
    // Nodes of [0,1] at step 2^-10; the sequence walks 1 - 2^-n.
    const SpacePtr grid = MetricSpace::grid1d(0.0, 1.0, 1025);
    std::vector<double> values(1025);
    for (int i = 0; i < 1025; ++i) values[i] = -grid->coord(i);
    const ExtendedFunction g(grid, values);

    std::vector<int> seq;
    for (int n = 0; n <= 10; ++n) seq.push_back(1024 - (1 << (10 - n)));
    const CauchyReport report = cauchy_check(seq, g, ModulusOperator::global(), 1.0);
    CHECK(report.holds);
    CHECK(report.min_slack == 0.0);
}

// ---------------------------------------------------------------------------
// infimizing_check
// ---------------------------------------------------------------------------

TEST_CASE("infimizing check on a modeled chain") {
    ExtendedFunction f(chain3(), {2.0, 1.0, 0.0});

    SUBCASE("the full walk reaches the minimum") {
        const InfimizingReport report = infimizing_check({0, 1, 2}, f, 0.0);
        CHECK(report.holds);
        CHECK(report.gap == 0.0);
        CHECK(report.liminf_estimate == 0.0);
        CHECK(report.inf_value == 0.0);
        CHECK(report.subsequence == std::vector<int>{0, 2});  // slope values (1,1,0)
        CHECK(report.internal_bound_ok);
        CHECK(report.bound_checks > 0);
    }

    SUBCASE("a stalled prefix keeps a visible gap") {
        const InfimizingReport report = infimizing_check({0, 1}, f, 0.5);
        CHECK(!report.holds);
        CHECK(report.gap == 1.0);
    }
}

TEST_CASE("staircase sequence infimizes with a sub-0.05 gap at depth 30") {
    const std::vector<double> coords = staircase_sequence(30);
    const std::vector<double> u_samples{1.0, 1.25, 1.5, 2.0, 2.5, 3.5, 5.5, 10.5, 20.5, 30.5};

    const InfimizingReport report =
        infimizing_check_line(coords, staircase_value, 0.0, 0.05, u_samples);
    CHECK(report.holds);
    CHECK(report.gap < 0.05);
    CHECK(report.gap > 0.0);
    CHECK(report.internal_bound_ok);
    CHECK(report.bound_checks >= 10);

    // The gap estimate never worsens as the prefix grows.
    double previous = kInf;
    for (int k = 1; k <= 30; ++k) {
        const std::vector<double> prefix(coords.begin(), coords.begin() + k);
        const InfimizingReport r = infimizing_check_line(prefix, staircase_value, 0.0, 0.05,
                                                         u_samples);
        CHECK(r.gap <= previous);
        previous = r.gap;
    }
}

// ---------------------------------------------------------------------------
// determination_oracle
// ---------------------------------------------------------------------------

TEST_CASE("two-point sweep: four functions, four classes") {
    const SpacePtr pair = MetricSpace::finite({{0, 1}, {1, 0}});
    const DeterminationReport report = determination_oracle(pair, {0.0, 1.0});
    CHECK(report.functions == 4);
    CHECK(report.classes == 4);
    CHECK(report.determined);
    CHECK(report.collision.empty());
}

TEST_CASE("full sweep on small chains stays determined") {
    const DeterminationReport r3 = determination_oracle(chain3(), {0.0, 0.5, 1.0, 2.0});
    CHECK(r3.functions == 64);
    CHECK(r3.determined);

    const DeterminationReport r4 = determination_oracle(chain4(), {0.0, 0.5, 1.0, 2.0});
    CHECK(r4.functions == 256);
    CHECK(r4.determined);
}

TEST_CASE("determination guards") {
    std::vector<std::vector<double>> ones(7, std::vector<double>(7, 1.0));
    for (int i = 0; i < 7; ++i) ones[i][i] = 0.0;
    CHECK_THROWS_AS(determination_oracle(MetricSpace::finite(ones), {0.0, 1.0}),
                    PreconditionError);

    std::vector<double> wide(20);
    for (int i = 0; i < 20; ++i) wide[i] = i * 0.125;
    const SpacePtr six = MetricSpace::finite(std::vector<std::vector<double>>{
        {0, 1, 1, 1, 1, 1},
        {1, 0, 1, 1, 1, 1},
        {1, 1, 0, 1, 1, 1},
        {1, 1, 1, 0, 1, 1},
        {1, 1, 1, 1, 0, 1},
        {1, 1, 1, 1, 1, 0}});
    CHECK_THROWS_AS(determination_oracle(six, wide), BudgetExceeded);
    CHECK_THROWS_AS(determination_oracle(chain3(), {0.0, kInf}), PreconditionError);
}

// ---------------------------------------------------------------------------
// comparison_check
// ---------------------------------------------------------------------------

TEST_CASE("comparison principle on the 3-chain") {
    ExtendedFunction g(chain3(), {2.0, 1.0, 0.0});
    const ModulusOperator op = ModulusOperator::global();

    SUBCASE("flat f: both hypotheses and the conclusion hold") {
        ExtendedFunction f(chain3(), {0.0, 0.0, 0.0});
        const ComparisonReport report = comparison_check(f, g, op, 0.5, 0.0);
        CHECK(report.domination_ok);
        CHECK(report.critical_set_ok);
        CHECK(report.hypotheses_hold);
        CHECK(report.conclusion_observed);
    }

    SUBCASE("f = g - 1: same profile, domination fails, conclusion survives") {
        ExtendedFunction f(chain3(), {1.0, 0.0, -1.0});
        const ComparisonReport report = comparison_check(f, g, op, 0.5, 0.0);
        CHECK(!report.domination_ok);
        CHECK(report.critical_set_ok);
        CHECK(!report.hypotheses_hold);
        CHECK(report.conclusion_observed);
        CHECK(report.details["domination_violation"]["point"] == 0);
    }

    SUBCASE("f pokes above g on the critical set") {
        ExtendedFunction f(chain3(), {0.0, 0.0, 0.5});
        const ComparisonReport report = comparison_check(f, g, op, 0.5, 0.0);
        CHECK(report.domination_ok);
        CHECK(!report.critical_set_ok);
        CHECK(!report.conclusion_observed);
        CHECK(report.details["critical_set_violation"]["point"] == 2);
    }
}

// ---------------------------------------------------------------------------
// critical_existence
// ---------------------------------------------------------------------------

TEST_CASE("critical existence finds profile zeros") {
    SUBCASE("finite chain: the minimizer is critical") {
        ExtendedFunction f(chain3(), {2.0, 1.0, 0.0});
        const ExistenceReport report = critical_existence(f, ModulusOperator::global());
        CHECK(report.verdict == "found_critical");
        CHECK(report.critical_points == std::vector<int>{2});
    }

    SUBCASE("identity on a grid: the left endpoint has no lower neighbor") {
        const SpacePtr grid = MetricSpace::grid1d(0.0, 1.0, 9);
        std::vector<double> values(9);
        for (int i = 0; i < 9; ++i) values[i] = grid->coord(i);
        ExtendedFunction f(grid, values);

        const ExistenceReport global_report = critical_existence(f, ModulusOperator::global());
        CHECK(global_report.verdict == "found_critical");
        CHECK(global_report.critical_points == std::vector<int>{0});

        const ModulusOperator local = ModulusOperator::local({1.0, 0.5, 0.25});
        const ExistenceReport local_report = critical_existence(f, local);
        CHECK(local_report.verdict == "found_critical");
        CHECK(!local_report.critical_points.empty());
        CHECK(local_report.critical_points[0] == 0);
    }
}

// ---------------------------------------------------------------------------
// randomized cross-checks
// ---------------------------------------------------------------------------

TEST_CASE("random descent runs keep their invariants and terminate honestly") {
    InstanceGen gen(97);
    int completed = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const SpacePtr space = gen.finite_space(gen.uniform_int(3, 9));
        const ExtendedFunction g = gen.function_on(space);
        // Halving g keeps T[f] strictly under T[g] away from critical points.
        const ExtendedFunction f = g.scaled(0.5);
        const int x0 = gen.uniform_int(0, space->size() - 1);
        const double rho = 0.5;

        const DescentTrace trace = descent_run(f, g, ModulusOperator::global(), x0, rho);
        CHECK(!verify_trace(trace, f.shifted(trace.shift), g.shifted(trace.shift),
                            ModulusOperator::global())
                   .has_value());
        CHECK(trace.terminal == DescentTerminal::reached_critical);
        CHECK(trace.total_length() <= trace.length_bound);
        if (!trace.entries.empty()) ++completed;
    }
    CHECK(completed > 100);
}
