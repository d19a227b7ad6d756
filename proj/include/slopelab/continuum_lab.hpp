#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "slopelab/extended_function.hpp"
#include "slopelab/metric_space.hpp"
#include "slopelab/moduli.hpp"
#include "slopelab/serialization.hpp"

namespace slopelab {

// ---------------------------------------------------------------------------
// Plane geometry
// ---------------------------------------------------------------------------

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
};

// ---------------------------------------------------------------------------
// Smooth plane functions
// ---------------------------------------------------------------------------

// A C^1 function on a rectangle, carried as an evaluator plus its gradient.
// The slope modulus of the smooth theory is the gradient norm.
class SmoothFunction2D {
public:
    using Evaluator = std::function<double(double, double)>;
    using GradientField = std::function<Vec2(double, double)>;

    // x^2/y on the upper half plane (clipped to a finite rectangle); its
    // infimum over the domain closure is 0.
    static SmoothFunction2D xsq_over_y();
    // (x^2 + y^2)/2, gradient (x, y), infimum 0.
    static SmoothFunction2D quadratic();
    static SmoothFunction2D custom(Evaluator value, GradientField gradient, Rect domain,
                                   std::string tag = "custom", double inf_hint = 0.0);

    // factor * g, factor > 0.
    SmoothFunction2D scaled(double factor) const;

    double value(Vec2 p) const { return value_(p.x, p.y); }
    Vec2 gradient(Vec2 p) const { return gradient_(p.x, p.y); }
    double slope(Vec2 p) const { return gradient(p).norm(); }
    bool inside(Vec2 p) const { return domain_.contains(p.x, p.y); }

    const Rect& domain() const { return domain_; }
    const std::string& tag() const { return tag_; }
    double inf_hint() const { return inf_hint_; }

private:
    SmoothFunction2D(Evaluator value, GradientField gradient, Rect domain, std::string tag,
                     double inf_hint);

    Evaluator value_;
    GradientField gradient_;
    Rect domain_;
    std::string tag_;
    double inf_hint_;
};

struct GradientCheck {
    bool ok = false;
    double max_relative_error = 0.0;
    int samples = 0;

    json to_json() const;
};

// Central finite differences against the declared gradient on a lattice of
// interior points; ok iff every component error stays within rel_tol
// (relative to max(1, gradient norm)).
GradientCheck validate_gradient(const SmoothFunction2D& f, int lattice = 8,
                                double rel_tol = 1e-5);

// ---------------------------------------------------------------------------
// Flow curves
// ---------------------------------------------------------------------------

// A sampled curve with the quantities the smooth theory tracks. Produced
// time-parametrized by gradient_flow (speed = slope along a steepest-descent
// curve) and arc-length-parametrized by arc_length_reparam (speed = 1).
struct FlowCurve {
    std::shared_ptr<const SmoothFunction2D> function;
    std::vector<double> times;   // parameter grid (t, or s after reparametrization)
    std::vector<Vec2> points;
    std::vector<double> speeds;  // ||dγ/dparam||
    std::vector<double> g_values;
    std::vector<double> slope_norms;     // ||∇g(γ)||
    std::vector<double> arc_length;      // σ, cumulative
    std::vector<double> slope_integral;  // cumulative ∫ ||∇g(γ)|| ||γ̇|| dparam
    std::string status = "completed";    // or "domain_exit"
    bool unit_speed = false;

    int size() const { return static_cast<int>(points.size()); }
    double total_length() const { return arc_length.empty() ? 0.0 : arc_length.back(); }
    double total_slope_integral() const {
        return slope_integral.empty() ? 0.0 : slope_integral.back();
    }

    json to_json() const;
    std::string to_csv() const;  // t,x,y,g,slope,speed,sigma,slope_integral
};

// Steepest-descent invariants: σ starts at 0 and never decreases, g∘γ never
// increases, and the slope-length integral stays within tol of the drop
// bound g(γ(0)) - inf g. Returns the first violation, or std::nullopt.
std::optional<json> flow_invariants(const FlowCurve& curve, double tol = 1e-9);

// Fixed-step RK4 for γ̇ = -∇g from x0. Stops early with status "domain_exit"
// when the curve (or an integration stage) leaves the domain rectangle.
// Throws StepTooLarge when g increases between consecutive nodes — the
// monotonicity a descent curve must keep, so the step is too coarse.
FlowCurve gradient_flow(const SmoothFunction2D& g, Vec2 x0, double dt, double t_max);

// Resamples the curve at uniform arc-length spacing ds (linear interpolation
// between nodes). The result is unit-speed within 1e-3 and preserves total
// length within ds. Throws DegenerateCurve when total length < ds.
FlowCurve arc_length_reparam(const FlowCurve& curve, double ds);

// ---------------------------------------------------------------------------
// Integrability diagnostics
// ---------------------------------------------------------------------------

struct IntegrabilityReport {
    std::vector<double> partial_integrals;  // 16 evenly spaced prefix values
    double final_integral = 0.0;
    double tail_increment = 0.0;  // last-quarter growth of the integral
    bool converging = false;      // tail increment <= tol
    bool diverging = false;       // tail increment > 10 * tol ("no tail convergence")
    double growth_rate = 0.0;     // tail increment / tail parameter span
    double final_slope_norm = 0.0;
    bool slope_limit_zero = false;  // final slope <= slope_tol
    double discrete_sum = 0.0;      // Σ ||∇g(z_n)|| d(z_n, z_{n+1}) over the nodes
    double discrete_tail_increment = 0.0;
    double tol = 0.0;
    double slope_tol = 0.0;

    json to_json() const;
};

// Integrability audit of an arc-length-parametrized curve: growth of the
// prefix integrals ∫ ||∇g(γ̃)|| ds, the vanishing-slope consequence, and the
// discrete summability sums over the sample chain. Convergence/divergence
// flags are finite-horizon evidence, not certificates. Throws
// PreconditionError when the curve is not unit-speed.
IntegrabilityReport integrability_report(const FlowCurve& curve, double tol = 1e-6,
                                         double slope_tol = 1e-3);

// Finite-horizon ω-limit proxy: "has_omega_limit" when the final quarter of
// the samples stays within 10 node spacings of the last point, else
// "escaping".
std::string omega_limit_verdict(const FlowCurve& curve);

// ---------------------------------------------------------------------------
// Comparison along a flow
// ---------------------------------------------------------------------------

struct FlowComparisonReport {
    double initial_gap = 0.0;    // g(x0) - f(x0)
    double final_gap = 0.0;      // (g - f)(γ(t_N))
    double slack = 0.0;          // initial_gap - final_gap, >= 0
    double integral_term = 0.0;  // ∫ (||∇g|| - ||∇f||) ||γ̇|| dt, >= 0
    double chain_margin = 0.0;   // slack - integral_term, >= -tol
    bool holds = false;
    double tol = 0.0;
    long samples = 0;

    json to_json() const;
};

// Integrates the steepest-descent curve of g and verifies the value-drop
// inequality g(x0) - f(x0) >= (g - f)(γ(t_N)) together with its integral
// strengthening. Requires ||∇f|| <= ||∇g|| at every sampled node; the first
// violation throws HypothesisFailure with the time it was observed.
FlowComparisonReport comparison_along_flow(const SmoothFunction2D& f, const SmoothFunction2D& g,
                                           Vec2 x0, double dt, double t_max, double tol = 1e-6);

// ---------------------------------------------------------------------------
// Worked examples
// ---------------------------------------------------------------------------

struct LevelCurveReport {
    double c = 0.0;
    double T = 0.0;
    FlowCurve curve;              // γ(t) = (sqrt(c) t, t^2) on [1, T]
    double level_error_max = 0.0; // max |g(γ(t)) - c|: the curve rides a level set
    double slope_start = 0.0;
    double slope_end = 0.0;       // gradient norm vanishes as t grows
    double tail_increment = 0.0;
    bool diverging = false;       // slope-length integral keeps growing
    double growth_rate = 0.0;     // ≈ 4 sqrt(c)

    json to_json() const;
};

// The unbounded level curve of x^2/y: zero-slope limit without asymptotic
// criticality, because the slope-length integral diverges linearly.
LevelCurveReport example_xsq_over_y(double c, double T);

// Closed forms of the staircase function on [1, ∞): on each block [n, n+1)
// the value is 1/(n+1) + (x-(n+1))^(n(n+1)) / (n(n+1)) and the slope
// magnitude is (n+1-x)^(n(n+1)-1). The slope is clamped to the smallest
// positive double when pow underflows: the true zero set is empty, and the
// tabulated profile must keep it that way.
double block_value(double x);
double block_slope(double x);

struct BlockExample {
    ExtendedFunction function;  // tabulated on a uniform grid over [1, x_max]
    ModulusProfile slope;       // closed-form slope sampled at the same nodes
};

BlockExample example_block_function(double x_max, int n_points);

}  // namespace slopelab
