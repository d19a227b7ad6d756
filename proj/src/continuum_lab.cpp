#include "slopelab/continuum_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "slopelab/errors.hpp"
#include "slopelab/extended_real.hpp"

namespace slopelab {

namespace {

std::string csv_number(double v) {
    if (v == kInf) return "inf";
    return json(v).dump();
}

}  // namespace

// ---------------------------------------------------------------------------
// Smooth plane functions
// ---------------------------------------------------------------------------

SmoothFunction2D::SmoothFunction2D(Evaluator value, GradientField gradient, Rect domain,
                                   std::string tag, double inf_hint)
    : value_(std::move(value)),
      gradient_(std::move(gradient)),
      domain_(domain),
      tag_(std::move(tag)),
      inf_hint_(inf_hint) {}

SmoothFunction2D SmoothFunction2D::xsq_over_y() {
    return SmoothFunction2D(
        [](double x, double y) { return x * x / y; },
        [](double x, double y) {
            return Vec2{2.0 * x / y, -(x * x) / (y * y)};
        },
        Rect{-128.0, 128.0, 0.0625, 16384.0}, "xsq_over_y", 0.0);
}

SmoothFunction2D SmoothFunction2D::quadratic() {
    return SmoothFunction2D([](double x, double y) { return 0.5 * (x * x + y * y); },
                            [](double x, double y) {
                                return Vec2{x, y};
                            },
                            Rect{-1024.0, 1024.0, -1024.0, 1024.0}, "quadratic", 0.0);
}

SmoothFunction2D SmoothFunction2D::custom(Evaluator value, GradientField gradient, Rect domain,
                                          std::string tag, double inf_hint) {
    if (!value || !gradient) throw PreconditionError("custom smooth function needs both callables");
    return SmoothFunction2D(std::move(value), std::move(gradient), domain, std::move(tag),
                            inf_hint);
}

SmoothFunction2D SmoothFunction2D::scaled(double factor) const {
    if (!(factor > 0.0) || !std::isfinite(factor))
        throw PreconditionError("smooth scaling needs a factor in (0, inf)");
    Evaluator value = value_;
    GradientField gradient = gradient_;
    return SmoothFunction2D(
        [value, factor](double x, double y) { return factor * value(x, y); },
        [gradient, factor](double x, double y) {
            const Vec2 gr = gradient(x, y);
            return Vec2{factor * gr.x, factor * gr.y};
        },
        domain_, tag_ + " scaled", factor * inf_hint_);
}

json GradientCheck::to_json() const {
    return json{{"ok", ok}, {"max_relative_error", max_relative_error}, {"samples", samples}};
}

GradientCheck validate_gradient(const SmoothFunction2D& f, int lattice, double rel_tol) {
    if (lattice < 2) throw PreconditionError("gradient validation needs a lattice of >= 2");
    const Rect& r = f.domain();
    // Stay strictly inside: 10% margin plus room for the difference step.
    const double mx = 0.1 * (r.x1 - r.x0);
    const double my = 0.1 * (r.y1 - r.y0);

    GradientCheck check;
    check.ok = true;
    for (int i = 0; i < lattice; ++i) {
        for (int j = 0; j < lattice; ++j) {
            const double x = r.x0 + mx + (r.x1 - r.x0 - 2.0 * mx) * i / (lattice - 1.0);
            const double y = r.y0 + my + (r.y1 - r.y0 - 2.0 * my) * j / (lattice - 1.0);
            const double hx = 1e-6 * std::max(1.0, std::abs(x));
            const double hy = 1e-6 * std::max(1.0, std::abs(y));
            const Vec2 fd{(f.value({x + hx, y}) - f.value({x - hx, y})) / (2.0 * hx),
                          (f.value({x, y + hy}) - f.value({x, y - hy})) / (2.0 * hy)};
            const Vec2 declared = f.gradient({x, y});
            const double scale = std::max(1.0, declared.norm());
            const double err = (fd - declared).norm() / scale;
            check.max_relative_error = std::max(check.max_relative_error, err);
            ++check.samples;
        }
    }
    check.ok = check.max_relative_error <= rel_tol;
    return check;
}

// ---------------------------------------------------------------------------
// Flow curves
// ---------------------------------------------------------------------------

json FlowCurve::to_json() const {
    json nodes = json::array();
    for (int i = 0; i < size(); ++i) {
        nodes.push_back(json{{"t", times[i]},
                             {"x", points[i].x},
                             {"y", points[i].y},
                             {"g", g_values[i]},
                             {"slope", slope_norms[i]},
                             {"speed", speeds[i]},
                             {"sigma", arc_length[i]},
                             {"slope_integral", slope_integral[i]}});
    }
    return json{{"tag", function ? function->tag() : ""},
                {"status", status},
                {"unit_speed", unit_speed},
                {"total_length", total_length()},
                {"total_slope_integral", total_slope_integral()},
                {"nodes", nodes}};
}

std::string FlowCurve::to_csv() const {
    std::ostringstream out;
    out << "t,x,y,g,slope,speed,sigma,slope_integral\n";
    for (int i = 0; i < size(); ++i) {
        out << csv_number(times[i]) << ',' << csv_number(points[i].x) << ','
            << csv_number(points[i].y) << ',' << csv_number(g_values[i]) << ','
            << csv_number(slope_norms[i]) << ',' << csv_number(speeds[i]) << ','
            << csv_number(arc_length[i]) << ',' << csv_number(slope_integral[i]) << '\n';
    }
    return out.str();
}

std::optional<json> flow_invariants(const FlowCurve& curve, double tol) {
    if (curve.size() == 0) return json{{"invariant", "empty_curve"}};
    if (curve.arc_length.front() != 0.0)
        return json{{"invariant", "sigma_origin"}, {"sigma0", curve.arc_length.front()}};
    for (int i = 0; i + 1 < curve.size(); ++i) {
        if (curve.arc_length[i + 1] < curve.arc_length[i])
            return json{{"invariant", "sigma_monotone"}, {"node", i}};
        if (curve.g_values[i + 1] > curve.g_values[i])
            return json{{"invariant", "g_nonincreasing"},
                        {"node", i},
                        {"g_before", curve.g_values[i]},
                        {"g_after", curve.g_values[i + 1]}};
    }
    const double drop_bound =
        curve.g_values.front() - (curve.function ? curve.function->inf_hint() : 0.0);
    if (!(curve.total_slope_integral() <= drop_bound + tol))
        return json{{"invariant", "slope_integral_bound"},
                    {"total_slope_integral", curve.total_slope_integral()},
                    {"drop_bound", drop_bound}};
    return std::nullopt;
}

FlowCurve gradient_flow(const SmoothFunction2D& g, Vec2 x0, double dt, double t_max) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw PreconditionError("gradient flow needs dt > 0");
    if (!(t_max > 0.0)) throw PreconditionError("gradient flow needs t_max > 0");
    if (!g.inside(x0))
        throw PreconditionError("gradient flow must start inside the domain rectangle");

    const double raw_steps = t_max / dt;
    long steps = std::llround(raw_steps);
    if (std::abs(static_cast<double>(steps) - raw_steps) > 1e-9) steps = std::lround(std::ceil(raw_steps));

    FlowCurve curve;
    curve.function = std::make_shared<SmoothFunction2D>(g);
    auto record = [&curve, &g](double t, Vec2 p) {
        const double slope = g.slope(p);
        curve.times.push_back(t);
        curve.points.push_back(p);
        curve.speeds.push_back(slope);  // γ̇ = -∇g, so speed = slope along the flow
        curve.g_values.push_back(g.value(p));
        curve.slope_norms.push_back(slope);
        if (curve.arc_length.empty()) {
            curve.arc_length.push_back(0.0);
            curve.slope_integral.push_back(0.0);
        } else {
            const int i = static_cast<int>(curve.arc_length.size());
            const double h = curve.times[i] - curve.times[i - 1];
            const double v0 = curve.speeds[i - 1];
            const double v1 = curve.speeds[i];
            curve.arc_length.push_back(curve.arc_length.back() + 0.5 * (v0 + v1) * h);
            curve.slope_integral.push_back(curve.slope_integral.back() +
                                           0.5 * (v0 * v0 + v1 * v1) * h);
        }
    };

    auto rhs = [&g](Vec2 p) {
        const Vec2 gr = g.gradient(p);
        return Vec2{-gr.x, -gr.y};
    };

    Vec2 p = x0;
    record(0.0, p);
    for (long i = 0; i < steps; ++i) {
        const Vec2 k1 = rhs(p);
        const Vec2 s2 = p + k1 * (0.5 * dt);
        if (!g.inside(s2)) { curve.status = "domain_exit"; break; }
        const Vec2 k2 = rhs(s2);
        const Vec2 s3 = p + k2 * (0.5 * dt);
        if (!g.inside(s3)) { curve.status = "domain_exit"; break; }
        const Vec2 k3 = rhs(s3);
        const Vec2 s4 = p + k3 * dt;
        if (!g.inside(s4)) { curve.status = "domain_exit"; break; }
        const Vec2 k4 = rhs(s4);
        const Vec2 next = p + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
        if (!g.inside(next)) { curve.status = "domain_exit"; break; }
        const double t_next = static_cast<double>(i + 1) * dt;
        if (g.value(next) > g.value(p))
            throw StepTooLarge(t_next, "g increased along the integrated flow at t = " +
                                           std::to_string(t_next) + "; reduce dt");
        record(t_next, next);
        p = next;
    }
    return curve;
}

FlowCurve arc_length_reparam(const FlowCurve& curve, double ds) {
    if (!(ds > 0.0)) throw PreconditionError("arc-length resampling needs ds > 0");
    if (!curve.function) throw PreconditionError("curve carries no function to resample against");
    const double total = curve.total_length();
    if (!(total >= ds))
        throw DegenerateCurve("curve of length " + std::to_string(total) +
                              " cannot be resampled at spacing " + std::to_string(ds));

    const SmoothFunction2D& g = *curve.function;
    const long segments = static_cast<long>(std::floor(total / ds + 1e-12));

    FlowCurve out;
    out.function = curve.function;
    out.status = curve.status;
    out.unit_speed = true;

    // Invert sigma by walking the original nodes once.
    int j = 0;
    std::vector<Vec2> pts;
    pts.reserve(segments + 1);
    for (long k = 0; k <= segments; ++k) {
        const double target = static_cast<double>(k) * ds;
        while (j + 1 < curve.size() && curve.arc_length[j + 1] < target) ++j;
        Vec2 p;
        if (j + 1 >= curve.size()) {
            p = curve.points.back();
        } else {
            const double lo = curve.arc_length[j];
            const double hi = curve.arc_length[j + 1];
            const double lambda = hi > lo ? (target - lo) / (hi - lo) : 0.0;
            p = curve.points[j] + (curve.points[j + 1] - curve.points[j]) * lambda;
        }
        pts.push_back(p);
    }

    for (long k = 0; k <= segments; ++k) {
        const Vec2 p = pts[k];
        out.times.push_back(static_cast<double>(k) * ds);
        out.points.push_back(p);
        out.g_values.push_back(g.value(p));
        out.slope_norms.push_back(g.slope(p));
    }
    out.speeds.resize(pts.size());
    out.arc_length.resize(pts.size());
    out.slope_integral.resize(pts.size());
    out.arc_length[0] = 0.0;
    out.slope_integral[0] = 0.0;
    for (long k = 0; k + 1 <= segments; ++k) {
        const double chord = (pts[k + 1] - pts[k]).norm();
        out.speeds[k] = chord / ds;
        out.arc_length[k + 1] = out.arc_length[k] + chord;
        out.slope_integral[k + 1] =
            out.slope_integral[k] + 0.5 * (out.slope_norms[k] + out.slope_norms[k + 1]) * chord;
    }
    out.speeds[segments] = segments > 0 ? out.speeds[segments - 1] : 0.0;
    return out;
}

// ---------------------------------------------------------------------------
// Integrability diagnostics
// ---------------------------------------------------------------------------

json IntegrabilityReport::to_json() const {
    return json{{"partial_integrals", partial_integrals},
                {"final_integral", final_integral},
                {"tail_increment", tail_increment},
                {"converging", converging},
                {"diverging", diverging},
                {"growth_rate", growth_rate},
                {"final_slope_norm", final_slope_norm},
                {"slope_limit_zero", slope_limit_zero},
                {"discrete_sum", discrete_sum},
                {"discrete_tail_increment", discrete_tail_increment},
                {"tol", tol},
                {"slope_tol", slope_tol}};
}

IntegrabilityReport integrability_report(const FlowCurve& curve, double tol, double slope_tol) {
    if (!curve.unit_speed)
        throw PreconditionError("integrability audit needs an arc-length-parametrized curve");
    const int n = curve.size();
    if (n < 8) throw PreconditionError("integrability audit needs at least 8 samples");

    IntegrabilityReport report;
    report.tol = tol;
    report.slope_tol = slope_tol;

    for (int k = 0; k < 16; ++k) {
        const int idx = static_cast<int>((static_cast<long>(n - 1) * (k + 1)) / 16);
        report.partial_integrals.push_back(curve.slope_integral[idx]);
    }
    report.final_integral = curve.slope_integral[n - 1];

    const int quarter = (3 * (n - 1)) / 4;
    report.tail_increment = curve.slope_integral[n - 1] - curve.slope_integral[quarter];
    const double span = curve.times[n - 1] - curve.times[quarter];
    report.growth_rate = span > 0.0 ? report.tail_increment / span : 0.0;
    report.converging = report.tail_increment <= tol;
    report.diverging = report.tail_increment > 10.0 * tol;

    report.final_slope_norm = curve.slope_norms[n - 1];
    report.slope_limit_zero = report.final_slope_norm <= slope_tol;

    // Discrete summability sums over the sample chain z_n = γ̃(s_n).
    std::vector<double> sums(n, 0.0);
    for (int i = 0; i + 1 < n; ++i) {
        const double chord = (curve.points[i + 1] - curve.points[i]).norm();
        sums[i + 1] = sums[i] + curve.slope_norms[i] * chord;
    }
    report.discrete_sum = sums[n - 1];
    report.discrete_tail_increment = sums[n - 1] - sums[quarter];
    return report;
}

std::string omega_limit_verdict(const FlowCurve& curve) {
    const int n = curve.size();
    if (n < 2) return "has_omega_limit";
    const double spacing = (curve.times[n - 1] - curve.times[0]) / (n - 1);
    const double radius = 10.0 * spacing;
    const Vec2 last = curve.points[n - 1];
    for (int i = (3 * (n - 1)) / 4; i < n; ++i) {
        if ((curve.points[i] - last).norm() > radius) return "escaping";
    }
    return "has_omega_limit";
}

// ---------------------------------------------------------------------------
// Comparison along a flow
// ---------------------------------------------------------------------------

json FlowComparisonReport::to_json() const {
    return json{{"initial_gap", initial_gap},
                {"final_gap", final_gap},
                {"slack", slack},
                {"integral_term", integral_term},
                {"chain_margin", chain_margin},
                {"holds", holds},
                {"tol", tol},
                {"samples", samples}};
}

FlowComparisonReport comparison_along_flow(const SmoothFunction2D& f, const SmoothFunction2D& g,
                                           Vec2 x0, double dt, double t_max, double tol) {
    const FlowCurve curve = gradient_flow(g, x0, dt, t_max);

    // Hypothesis: the slope of f never exceeds the slope of g along the curve.
    std::vector<double> slope_f(curve.size());
    for (int i = 0; i < curve.size(); ++i) {
        slope_f[i] = f.slope(curve.points[i]);
        if (slope_f[i] > curve.slope_norms[i])
            throw HypothesisFailure(curve.times[i],
                                    "slope of f exceeds slope of g at t = " +
                                        std::to_string(curve.times[i]));
    }

    FlowComparisonReport report;
    report.tol = tol;
    report.samples = curve.size();
    report.initial_gap = g.value(x0) - f.value(x0);
    const Vec2 end = curve.points.back();
    report.final_gap = g.value(end) - f.value(end);
    report.slack = report.initial_gap - report.final_gap;

    // ∫ (||∇g|| - ||∇f||) ||γ̇|| dt with ||γ̇|| = ||∇g|| along the flow.
    double integral = 0.0;
    for (int i = 0; i + 1 < curve.size(); ++i) {
        const double h = curve.times[i + 1] - curve.times[i];
        const double a = (curve.slope_norms[i] - slope_f[i]) * curve.speeds[i];
        const double b = (curve.slope_norms[i + 1] - slope_f[i + 1]) * curve.speeds[i + 1];
        integral += 0.5 * (a + b) * h;
    }
    report.integral_term = integral;
    report.chain_margin = report.slack - report.integral_term;
    report.holds = report.slack >= -tol && report.integral_term >= -tol &&
                   report.chain_margin >= -tol;
    return report;
}

// ---------------------------------------------------------------------------
// Worked examples
// ---------------------------------------------------------------------------

json LevelCurveReport::to_json() const {
    return json{{"c", c},
                {"T", T},
                {"samples", curve.size()},
                {"level_error_max", level_error_max},
                {"slope_start", slope_start},
                {"slope_end", slope_end},
                {"total_slope_integral", curve.total_slope_integral()},
                {"tail_increment", tail_increment},
                {"diverging", diverging},
                {"growth_rate", growth_rate},
                {"status", curve.status}};
}

LevelCurveReport example_xsq_over_y(double c, double T) {
    if (!(c > 0.0)) throw PreconditionError("level curve example needs c > 0");
    if (!(T > 1.0)) throw PreconditionError("level curve example needs T > 1");

    const SmoothFunction2D g = SmoothFunction2D::xsq_over_y();
    const double root_c = std::sqrt(c);
    const long steps = std::lround(std::ceil(100.0 * (T - 1.0)));
    const double dt = (T - 1.0) / static_cast<double>(steps);

    LevelCurveReport report;
    report.c = c;
    report.T = T;
    report.curve.function = std::make_shared<SmoothFunction2D>(g);

    FlowCurve& curve = report.curve;
    for (long i = 0; i <= steps; ++i) {
        const double t = 1.0 + static_cast<double>(i) * dt;
        const Vec2 p{root_c * t, t * t};
        const Vec2 velocity{root_c, 2.0 * t};
        const double slope = g.slope(p);
        const double speed = velocity.norm();
        curve.times.push_back(t);
        curve.points.push_back(p);
        curve.speeds.push_back(speed);
        curve.g_values.push_back(g.value(p));
        curve.slope_norms.push_back(slope);
        if (curve.arc_length.empty()) {
            curve.arc_length.push_back(0.0);
            curve.slope_integral.push_back(0.0);
        } else {
            const std::size_t k = curve.arc_length.size();
            curve.arc_length.push_back(curve.arc_length.back() +
                                       0.5 * (curve.speeds[k - 1] + curve.speeds[k]) * dt);
            curve.slope_integral.push_back(
                curve.slope_integral.back() +
                0.5 * (curve.slope_norms[k - 1] * curve.speeds[k - 1] +
                       curve.slope_norms[k] * curve.speeds[k]) *
                    dt);
        }
        report.level_error_max = std::max(report.level_error_max, std::abs(g.value(p) - c));
    }

    report.slope_start = curve.slope_norms.front();
    report.slope_end = curve.slope_norms.back();

    const int n = curve.size();
    const int quarter = (3 * (n - 1)) / 4;
    report.tail_increment = curve.slope_integral[n - 1] - curve.slope_integral[quarter];
    const double span = curve.times[n - 1] - curve.times[quarter];
    report.growth_rate = span > 0.0 ? report.tail_increment / span : 0.0;
    report.diverging = report.tail_increment > 10.0 * 1e-6;
    return report;
}

double block_value(double x) {
    if (!(x >= 1.0) || !std::isfinite(x))
        throw PreconditionError("staircase closed forms are defined on [1, inf)");
    const double n = std::floor(x);
    const double k = n * (n + 1.0);
    return 1.0 / (n + 1.0) + std::pow(x - (n + 1.0), k) / k;
}

double block_slope(double x) {
    if (!(x >= 1.0) || !std::isfinite(x))
        throw PreconditionError("staircase closed forms are defined on [1, inf)");
    const double n = std::floor(x);
    const double k = n * (n + 1.0);
    double s = std::pow((n + 1.0) - x, k - 1.0);
    if (s == 0.0) s = std::numeric_limits<double>::denorm_min();
    return s;
}

BlockExample example_block_function(double x_max, int n_points) {
    if (!(x_max >= 2.0)) throw PreconditionError("staircase example needs x_max >= 2");
    if (n_points < 2) throw PreconditionError("staircase example needs at least 2 nodes");

    const SpacePtr grid = MetricSpace::grid1d(1.0, x_max, n_points);
    std::vector<double> values(n_points);
    std::vector<double> slopes(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double x = grid->coord(i);
        values[i] = block_value(x);
        slopes[i] = block_slope(x);
    }

    BlockExample example{ExtendedFunction(grid, values),
                         ModulusProfile{grid, ModulusKind::analytic, "analytic", slopes, {}}};
    return example;
}

}  // namespace slopelab
