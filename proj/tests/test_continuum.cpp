#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "slopelab/continuum_lab.hpp"
#include "slopelab/errors.hpp"
#include "slopelab/extended_real.hpp"

using namespace slopelab;

namespace {

// Linear drift toward +x: gradient flow moves right at unit speed.
SmoothFunction2D drift_right() {
    return SmoothFunction2D::custom([](double x, double) { return -x; },
                                    [](double, double) {
                                        return Vec2{-1.0, 0.0};
                                    },
                                    Rect{0.0, 1.0, 0.0, 1.0}, "drift", -1.0);
}

// g(x, y) = -x^2/2 on x >= 1: the flow accelerates, x(t) = x0 * e^t.
SmoothFunction2D accelerating() {
    return SmoothFunction2D::custom([](double x, double) { return -0.5 * x * x; },
                                    [](double x, double) {
                                        return Vec2{-x, 0.0};
                                    },
                                    Rect{1.0, 100.0, -1.0, 1.0}, "accelerating", -5000.0);
}

}  // namespace

// ---------------------------------------------------------------------------
// SmoothFunction2D
// ---------------------------------------------------------------------------

TEST_CASE("built-in smooth functions and their gradients") {
    const SmoothFunction2D q = SmoothFunction2D::quadratic();
    CHECK(q.value({3.0, 4.0}) == 12.5);
    CHECK(q.gradient({3.0, 4.0}).x == 3.0);
    CHECK(q.slope({3.0, 4.0}) == 5.0);

    const SmoothFunction2D r = SmoothFunction2D::xsq_over_y();
    CHECK(r.value({1.0, 1.0}) == 1.0);
    CHECK(r.gradient({1.0, 1.0}).x == 2.0);
    CHECK(r.gradient({1.0, 1.0}).y == -1.0);
    CHECK(r.inside({1.0, 1.0}));
    CHECK(!r.inside({1.0, -1.0}));

    const SmoothFunction2D half = q.scaled(0.5);
    CHECK(half.value({3.0, 4.0}) == 6.25);
    CHECK(half.slope({3.0, 4.0}) == 2.5);
    CHECK_THROWS_AS(q.scaled(-1.0), PreconditionError);
}

TEST_CASE("gradient validation against finite differences") {
    CHECK(validate_gradient(SmoothFunction2D::quadratic()).ok);
    CHECK(validate_gradient(SmoothFunction2D::xsq_over_y()).ok);
    CHECK(validate_gradient(SmoothFunction2D::quadratic().scaled(0.25)).ok);

    // A deliberately wrong gradient is caught.
    const SmoothFunction2D broken = SmoothFunction2D::custom(
        [](double x, double y) { return 0.5 * (x * x + y * y); },
        [](double x, double y) {
            return Vec2{y, x};
        },
        Rect{-2.0, 2.0, -2.0, 2.0}, "broken");
    const GradientCheck check = validate_gradient(broken);
    CHECK(!check.ok);
    CHECK(check.max_relative_error > 1e-2);
    CHECK(check.to_json()["ok"] == false);
}

// ---------------------------------------------------------------------------
// gradient_flow
// ---------------------------------------------------------------------------

TEST_CASE("quadratic flow reproduces the exponential solution") {
    const SmoothFunction2D g = SmoothFunction2D::quadratic();
    const FlowCurve curve = gradient_flow(g, {1.0, 0.0}, 1e-3, 1.0);

    CHECK(curve.status == "completed");
    CHECK(curve.size() == 1001);
    CHECK(curve.points.back().y == 0.0);
    CHECK(std::abs(curve.points.back().x - std::exp(-1.0)) <= 1e-6);
    // Arc length: 1 - e^-1; slope-length integral: (1 - e^-2)/2.
    CHECK(std::abs(curve.total_length() - (1.0 - std::exp(-1.0))) <= 1e-6);
    CHECK(std::abs(curve.total_slope_integral() - 0.5 * (1.0 - std::exp(-2.0))) <= 1e-6);
    CHECK(!flow_invariants(curve).has_value());
}

TEST_CASE("stationary start stays put") {
    const FlowCurve curve = gradient_flow(SmoothFunction2D::quadratic(), {0.0, 0.0}, 0.01, 1.0);
    CHECK(curve.status == "completed");
    CHECK(curve.total_length() == 0.0);
    CHECK(curve.points.back().x == 0.0);
    CHECK(curve.speeds.back() == 0.0);
    CHECK(!flow_invariants(curve).has_value());
}

TEST_CASE("coarse steps that break monotonicity throw") {
    CHECK_THROWS_AS(gradient_flow(SmoothFunction2D::quadratic(), {1.0, 0.0}, 3.0, 9.0),
                    StepTooLarge);
    try {
        gradient_flow(SmoothFunction2D::quadratic(), {1.0, 0.0}, 3.0, 9.0);
    } catch (const StepTooLarge& e) {
        CHECK(e.t == 3.0);
    }
}

TEST_CASE("leaving the rectangle records a domain exit") {
    const FlowCurve curve = gradient_flow(drift_right(), {0.5, 0.5}, 0.1, 10.0);
    CHECK(curve.status == "domain_exit");
    CHECK(curve.size() < 101);
    CHECK(curve.points.back().x <= 1.0);
    CHECK(!flow_invariants(curve).has_value());
}

TEST_CASE("x^2/y flow descends toward zero") {
    const FlowCurve curve = gradient_flow(SmoothFunction2D::xsq_over_y(), {1.0, 1.0}, 1e-3, 2.0);
    CHECK(curve.status == "completed");
    CHECK(curve.g_values.front() == 1.0);
    CHECK(curve.g_values.back() < 0.2);
    for (int i = 0; i + 1 < curve.size(); ++i)
        CHECK(curve.g_values[i + 1] <= curve.g_values[i]);
    CHECK(!flow_invariants(curve).has_value());
}

TEST_CASE("gradient flow precondition errors") {
    const SmoothFunction2D g = SmoothFunction2D::quadratic();
    CHECK_THROWS_AS(gradient_flow(g, {1.0, 0.0}, 0.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(gradient_flow(g, {2000.0, 0.0}, 0.1, 1.0), PreconditionError);
}

// ---------------------------------------------------------------------------
// arc_length_reparam
// ---------------------------------------------------------------------------

TEST_CASE("straight accelerating flow resamples to unit speed") {
    const FlowCurve curve = gradient_flow(accelerating(), {1.0, 0.0}, 1e-3, 2.0);
    CHECK(curve.status == "completed");
    // Speeds are nonuniform: e^t from 1 to e^2.
    CHECK(curve.speeds.front() == 1.0);
    CHECK(curve.speeds.back() > 7.0);

    const FlowCurve uniform = arc_length_reparam(curve, 0.01);
    CHECK(uniform.unit_speed);
    for (double v : uniform.speeds) CHECK(std::abs(v - 1.0) <= 1e-3);
    CHECK(std::abs(uniform.total_length() - curve.total_length()) <= 0.01 + 1e-6);
    for (const Vec2& p : uniform.points) CHECK(p.y == 0.0);
}

TEST_CASE("reparametrization preserves the slope-length integral") {
    const FlowCurve curve = gradient_flow(SmoothFunction2D::quadratic(), {1.0, 0.0}, 1e-3, 10.0);
    const FlowCurve uniform = arc_length_reparam(curve, 1e-3);
    CHECK(uniform.unit_speed);
    CHECK(std::abs(uniform.total_slope_integral() - curve.total_slope_integral()) <= 1e-4);
    // Unit-speed property within the contract tolerance.
    for (double v : uniform.speeds) CHECK(std::abs(v - 1.0) <= 1e-3);
}

TEST_CASE("a stationary curve cannot be resampled") {
    const FlowCurve curve = gradient_flow(SmoothFunction2D::quadratic(), {0.0, 0.0}, 0.01, 1.0);
    CHECK_THROWS_AS(arc_length_reparam(curve, 0.01), DegenerateCurve);
}

// ---------------------------------------------------------------------------
// integrability_report and omega limits
// ---------------------------------------------------------------------------

TEST_CASE("steepest-descent integrals stay under the drop bound") {
    const SmoothFunction2D g = SmoothFunction2D::quadratic();
    const FlowCurve curve = gradient_flow(g, {1.0, 0.0}, 1e-3, 10.0);
    // ds fine enough that the last sample sits deep in the flat tail.
    const FlowCurve uniform = arc_length_reparam(curve, 1e-4);

    const IntegrabilityReport report = integrability_report(uniform);
    const double drop = g.value({1.0, 0.0}) - g.inf_hint();
    CHECK(report.final_integral <= drop + 1e-6);
    for (double partial : report.partial_integrals) CHECK(partial <= drop + 1e-6);
    CHECK(report.slope_limit_zero);  // final slope ~ e^-10
    CHECK(std::abs(report.discrete_sum - report.final_integral) <= 1e-3);

    CHECK_THROWS_AS(integrability_report(curve), PreconditionError);  // not unit-speed
}

TEST_CASE("omega-limit proxy separates converging and escaping curves") {
    const FlowCurve flow = gradient_flow(SmoothFunction2D::quadratic(), {1.0, 0.0}, 1e-3, 10.0);
    CHECK(omega_limit_verdict(flow) == "has_omega_limit");

    const LevelCurveReport level = example_xsq_over_y(1.0, 100.0);
    CHECK(omega_limit_verdict(level.curve) == "escaping");
}

// ---------------------------------------------------------------------------
// comparison_along_flow
// ---------------------------------------------------------------------------

TEST_CASE("comparison along the quadratic flow") {
    const SmoothFunction2D g = SmoothFunction2D::quadratic();

    SUBCASE("f = g: the chain collapses to equalities") {
        const FlowComparisonReport report = comparison_along_flow(g, g, {1.0, 0.0}, 1e-3, 10.0);
        CHECK(report.holds);
        CHECK(report.slack == 0.0);
        CHECK(report.integral_term == 0.0);
        CHECK(report.chain_margin == 0.0);
    }

    SUBCASE("f = g/2: strict inequality with slack about a quarter") {
        const FlowComparisonReport report =
            comparison_along_flow(g.scaled(0.5), g, {1.0, 0.0}, 1e-3, 10.0);
        CHECK(report.holds);
        CHECK(report.slack == doctest::Approx(0.25).epsilon(1e-6));
        CHECK(report.integral_term == doctest::Approx(0.25).epsilon(1e-4));
        CHECK(report.slack > 0.0);
        CHECK(report.chain_margin >= -1e-6);
    }

    SUBCASE("a steeper f violates the hypothesis immediately") {
        CHECK_THROWS_AS(comparison_along_flow(g.scaled(2.0), g, {1.0, 0.0}, 1e-3, 1.0),
                        HypothesisFailure);
    }
}

// ---------------------------------------------------------------------------
// worked example: the level curve of x^2/y
// ---------------------------------------------------------------------------

TEST_CASE("level curve rides g = c to machine precision") {
    const LevelCurveReport report = example_xsq_over_y(1.0, 100.0);
    CHECK(report.level_error_max <= 1e-12);
    CHECK(report.curve.g_values.front() == 1.0);

    // Gradient formula along the curve: (2 sqrt(c)/t, -c/t^2) at t = 10.
    const SmoothFunction2D g = SmoothFunction2D::xsq_over_y();
    const Vec2 grad = g.gradient({10.0, 100.0});
    CHECK(grad.x == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(grad.y == doctest::Approx(-0.01).epsilon(1e-12));

    // The gradient norm vanishes while the slope-length integral keeps
    // growing at rate about 4 sqrt(c).
    CHECK(report.slope_end < report.slope_start);
    CHECK(report.slope_end == doctest::Approx(std::sqrt(4.0 / 1e4 + 1.0 / 1e8)).epsilon(1e-9));
    CHECK(report.diverging);
    CHECK(report.growth_rate == doctest::Approx(4.0).epsilon(0.01));
}

TEST_CASE("level curve integral doubles when the horizon doubles") {
    const double at_100 = example_xsq_over_y(1.0, 100.0).curve.total_slope_integral();
    const double at_50 = example_xsq_over_y(1.0, 50.0).curve.total_slope_integral();
    CHECK(at_100 / at_50 == doctest::Approx(2.0154).epsilon(1e-3));

    CHECK_THROWS_AS(example_xsq_over_y(0.0, 10.0), PreconditionError);
    CHECK_THROWS_AS(example_xsq_over_y(1.0, 1.0), PreconditionError);
}

// ---------------------------------------------------------------------------
// worked example: the staircase function
// ---------------------------------------------------------------------------

TEST_CASE("staircase closed forms at the pinned points") {
    CHECK(block_value(1.5) == 0.625);
    CHECK(block_slope(1.5) == 0.5);
    CHECK(block_slope(2.0 - 1e-3) == doctest::Approx(1e-3).epsilon(1e-9));
    CHECK(block_slope(2.0 - 1e-6) == doctest::Approx(1e-6).epsilon(1e-6));
    // Deep blocks underflow to the clamp, never to zero.
    CHECK(block_slope(31.0 - 1.0 / 30.0) > 0.0);
    CHECK(block_slope(31.0 - 1.0 / 30.0) < 1e-300);
    CHECK_THROWS_AS(block_value(0.5), PreconditionError);
}

TEST_CASE("tabulated staircase matches the closed forms") {
    const BlockExample example = example_block_function(4.0, 13);  // step 0.25
    CHECK(example.function.size() == 13);
    CHECK(example.slope.kind == ModulusKind::analytic);

    // Node 2 sits at x = 1.5.
    CHECK(example.function.value(2) == 0.625);
    CHECK(example.slope.values[2] == 0.5);

    for (int i = 0; i < 13; ++i) {
        const double x = example.function.space()->coord(i);
        CHECK(example.function.value(i) == block_value(x));
        CHECK(example.slope.values[i] > 0.0);  // empty zero set
    }
    // The minimum sits at the right end and shrinks toward the infimum 0.
    CHECK(example.function.finite_min() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(example_block_function(8.0, 29).function.finite_min() <
          example.function.finite_min());

    // Central differences approximate the slope on block interiors to O(h).
    const double h = 0.25;
    for (int i = 1; i + 1 < 13; ++i) {
        const double x = example.function.space()->coord(i);
        if (std::floor(x) != std::floor(x - h) || std::floor(x + h) != std::floor(x)) continue;
        const double fd =
            (example.function.value(i - 1) - example.function.value(i + 1)) / (2.0 * h);
        CHECK(std::abs(fd - example.slope.values[i]) <= h);
    }

    CHECK_THROWS_AS(example_block_function(1.5, 8), PreconditionError);
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

TEST_CASE("flow curves serialize to JSON and CSV") {
    const FlowCurve curve = gradient_flow(SmoothFunction2D::quadratic(), {1.0, 0.0}, 0.25, 1.0);
    const json j = curve.to_json();
    CHECK(j["status"] == "completed");
    CHECK(j["tag"] == "quadratic");
    CHECK(j["nodes"].size() == 5);
    CHECK(j["nodes"][0]["g"] == 0.5);

    const std::string csv = curve.to_csv();
    CHECK(csv.rfind("t,x,y,g,slope,speed,sigma,slope_integral\n", 0) == 0);
    int lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == 6);
}
