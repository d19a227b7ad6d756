#include "slopelab/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "slopelab/errors.hpp"
#include "slopelab/extended_real.hpp"

namespace slopelab {

namespace {

void require_schedule(const std::vector<double>& schedule) {
    if (schedule.empty()) throw ScheduleError("schedule is empty");
    double prev = kInf;
    for (double r : schedule) {
        if (!(r > 0.0) || !is_finite(r)) throw ScheduleError("schedule entries must be positive and finite");
        if (!(r < prev)) throw ScheduleError("schedule must be strictly decreasing");
        prev = r;
    }
}

void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* what) {
    if (!a->same_as(*b)) throw SpaceMismatch(what);
}

// Spread of the last up-to-3 entries of a value history: the stabilization
// diagnostic reported by schedule-based operators.
double tail_spread(const std::vector<double>& history) {
    const std::size_t n = history.size();
    const std::size_t k = std::min<std::size_t>(3, n);
    double lo = kInf, hi = -kInf;
    for (std::size_t i = n - k; i < n; ++i) {
        lo = std::min(lo, history[i]);
        hi = std::max(hi, history[i]);
    }
    if (!is_finite(hi) || !is_finite(lo)) return kInf;
    return hi - lo;
}

}  // namespace

std::string to_string(ModulusKind kind) {
    switch (kind) {
        case ModulusKind::local: return "local";
        case ModulusKind::global: return "global";
        case ModulusKind::average: return "average";
        case ModulusKind::diffusion: return "diffusion";
        case ModulusKind::composed: return "composed";
        case ModulusKind::analytic: return "analytic";
    }
    return "unknown";
}

double ModulusProfile::max_stabilization() const {
    double best = 0.0;
    for (double s : stabilization)
        if (is_finite(s)) best = std::max(best, s);
    return best;
}

double delta_plus(const ExtendedFunction& f, int x, int y) {
    if (!f.in_domain(x)) throw DomainError(x);
    if (x == y) return 0.0;
    // f(y) = +inf gives fx - inf = -inf, whose positive part is 0: the
    // extended-real convention holds natively in IEEE arithmetic.
    const double gap = pos_part(f.value(x) - f.value(y));
    if (gap == 0.0) return 0.0;
    return gap / f.space()->distance(x, y);
}

ModulusProfile global_slope(const ExtendedFunction& f) {
    const int n = f.space()->size();
    ModulusProfile out;
    out.space = f.space();
    out.kind = ModulusKind::global;
    out.tag = "global";
    out.values.assign(n, kInf);
    for (int x = 0; x < n; ++x) {
        if (!f.in_domain(x)) continue;
        double best = 0.0;
        for (int y = 0; y < n; ++y) {
            if (y == x) continue;
            best = std::max(best, delta_plus(f, x, y));
        }
        out.values[x] = best;
    }
    return out;
}

ModulusProfile local_slope(const ExtendedFunction& f, const std::vector<double>& radius_schedule) {
    require_schedule(radius_schedule);
    const int n = f.space()->size();
    const MetricSpace& space = *f.space();
    ModulusProfile out;
    out.space = f.space();
    out.kind = ModulusKind::local;
    out.tag = "local";
    out.values.assign(n, kInf);
    out.stabilization.assign(n, kInf);
    std::vector<double> history;
    history.reserve(radius_schedule.size());
    for (int x = 0; x < n; ++x) {
        if (!f.in_domain(x)) continue;
        history.clear();
        for (double r : radius_schedule) {
            double best = 0.0;
            for (int y = 0; y < n; ++y) {
                if (y == x) continue;
                if (space.distance(x, y) > r) continue;
                best = std::max(best, delta_plus(f, x, y));
            }
            history.push_back(best);  // empty punctured ball contributes sup ∅ = 0
        }
        out.values[x] = history.back();
        out.stabilization[x] = tail_spread(history);
    }
    return out;
}

namespace {

// Trapezoid quadrature of the quotient y -> Δ⁺f(x,y) against a grid density.
// The integrand has a removable singularity at y = x (the 0/0 convention pins
// the node value to 0 even though the one-sided limits are |f'(x±)|), and a
// plain trapezoid rule would charge that single μ-null node an O(h) error.
// Each side of the center cell is therefore integrated with the node value
// replaced by a linear extrapolation from the two nearest same-side nodes
// (nearest neighbor when only one exists), clamped to [0, max_{y != x} q(y)]
// so the filled value stays within the range the true integrand can attain.
double grid_average_at(const ExtendedFunction& f, const Measure& mu, int x) {
    const MetricSpace& space = *f.space();
    const int n = space.size();
    const double h = space.grid_step();
    std::vector<double> q(n, 0.0);
    double qmax = 0.0;
    for (int y = 0; y < n; ++y) {
        if (y == x) continue;
        q[y] = delta_plus(f, x, y);
        qmax = std::max(qmax, q[y]);
    }
    auto extrapolate = [&](int first, int second, int fallback) {
        double v;
        if (second >= 0 && second < n)
            v = 2.0 * q[first] - q[second];
        else if (first >= 0 && first < n)
            v = q[first];
        else
            v = q[fallback];
        return std::min(std::max(v, 0.0), qmax);
    };
    const std::vector<double>& rho = mu.samples();
    std::vector<double> cells;
    cells.reserve(n - 1);
    for (int c = 0; c + 1 < n; ++c) {
        double left = q[c], right = q[c + 1];
        if (c == x) left = extrapolate(x + 1, x + 2, x);
        if (c + 1 == x) right = extrapolate(x - 1, x - 2, x);
        cells.push_back(0.5 * h * (left * rho[c] + right * rho[c + 1]));
    }
    return pairwise_sum(cells);
}

}  // namespace

double average_descent_at(const ExtendedFunction& f, const Measure& mu, int x) {
    require_same_space(f.space(), mu.space(), "function and measure live on different spaces");
    if (!f.in_domain(x)) return kInf;
    if (f.space()->kind() == SpaceKind::grid1d) return grid_average_at(f, mu, x);
    const int n = f.space()->size();
    const std::vector<double>& w = mu.samples();
    std::vector<double> terms;
    terms.reserve(n);
    for (int y = 0; y < n; ++y) terms.push_back(y == x ? 0.0 : w[y] * delta_plus(f, x, y));
    return pairwise_sum(terms);
}

ModulusProfile average_descent(const ExtendedFunction& f, const Measure& mu) {
    require_same_space(f.space(), mu.space(), "function and measure live on different spaces");
    const int n = f.space()->size();
    ModulusProfile out;
    out.space = f.space();
    out.kind = ModulusKind::average;
    out.tag = "average";
    out.values.assign(n, kInf);
    for (int x = 0; x < n; ++x) {
        if (!f.in_domain(x)) continue;
        out.values[x] = average_descent_at(f, mu, x);
    }
    return out;
}

namespace {

// One ball average (1/μ(B)) ∫_B Δ⁺f(x,·) dμ over the open ball d(x,·) < eps.
// On grids, the ball is a contiguous node range and the integral is the same
// center-filled trapezoid restricted to the cells inside the ball; on finite
// spaces it is a weighted sum. Throws EmptyBall when μ(B) = 0.
double ball_average_at(const ExtendedFunction& f, const Measure& mu, int x, double eps) {
    const MetricSpace& space = *f.space();
    const int n = space.size();
    const std::vector<double>& w = mu.samples();
    if (space.kind() == SpaceKind::finite) {
        std::vector<double> num_terms, mass_terms;
        for (int y = 0; y < n; ++y) {
            if (space.distance(x, y) >= eps) continue;
            mass_terms.push_back(w[y]);
            num_terms.push_back(y == x ? 0.0 : w[y] * delta_plus(f, x, y));
        }
        const double mass = pairwise_sum(mass_terms);
        if (!(mass > 0.0)) throw EmptyBall(x, eps);
        return pairwise_sum(num_terms) / mass;
    }
    // grid1d: nodes within the open ball form the index range [lo, hi].
    const double h = space.grid_step();
    int radius = static_cast<int>(std::ceil(eps / h)) - 1;
    while (radius >= 0 && !(radius * h < eps)) --radius;
    const int lo = std::max(0, x - radius);
    const int hi = std::min(n - 1, x + radius);
    if (radius < 0 || hi <= lo) throw EmptyBall(x, eps);
    std::vector<double> q(n, 0.0);
    double qmax = 0.0;
    for (int y = lo; y <= hi; ++y) {
        if (y == x) continue;
        q[y] = delta_plus(f, x, y);
        qmax = std::max(qmax, q[y]);
    }
    auto extrapolate = [&](int first, int second) {
        double v;
        if (second >= lo && second <= hi)
            v = 2.0 * q[first] - q[second];
        else if (first >= lo && first <= hi)
            v = q[first];
        else
            v = 0.0;
        return std::min(std::max(v, 0.0), qmax);
    };
    std::vector<double> num_terms, mass_terms;
    for (int c = lo; c < hi; ++c) {
        double left = q[c], right = q[c + 1];
        if (c == x) left = extrapolate(x + 1, x + 2);
        if (c + 1 == x) right = extrapolate(x - 1, x - 2);
        num_terms.push_back(0.5 * h * (left * w[c] + right * w[c + 1]));
        mass_terms.push_back(0.5 * h * (w[c] + w[c + 1]));
    }
    const double mass = pairwise_sum(mass_terms);
    if (!(mass > 0.0)) throw EmptyBall(x, eps);
    return pairwise_sum(num_terms) / mass;
}

}  // namespace

ModulusProfile diffusion_descent(const ExtendedFunction& f, const Measure& mu,
                                 const std::vector<double>& eps_schedule) {
    require_same_space(f.space(), mu.space(), "function and measure live on different spaces");
    require_schedule(eps_schedule);
    const int n = f.space()->size();
    ModulusProfile out;
    out.space = f.space();
    out.kind = ModulusKind::diffusion;
    out.tag = "diffusion";
    out.values.assign(n, kInf);
    out.stabilization.assign(n, kInf);
    std::vector<double> history;
    history.reserve(eps_schedule.size());
    for (int x = 0; x < n; ++x) {
        if (!f.in_domain(x)) continue;
        history.clear();
        for (double eps : eps_schedule) history.push_back(ball_average_at(f, mu, x, eps));
        out.values[x] = history.back();
        out.stabilization[x] = tail_spread(history);
    }
    return out;
}

PointSet critical_set(const ModulusProfile& profile, double tol) {
    std::vector<int> members;
    for (int i = 0; i < profile.size(); ++i)
        if (profile.values[i] <= tol) members.push_back(i);
    return PointSet(profile.space, std::move(members));
}

ModulusProfile compose_modulus(const Theta& phi, const ModulusProfile& profile) {
    if (!phi.valid()) throw Error("invalid_gauge", "composition gauge must be strictly increasing with phi(0)=0");
    ModulusProfile out = profile;
    out.kind = ModulusKind::composed;
    out.tag = phi.name() + " o " + profile.tag;
    for (double& v : out.values) v = is_finite(v) ? phi(v) : kInf;
    return out;
}

bool modulus_domain(const ModulusProfile& profile, const ExtendedFunction& f) {
    if (!profile.space->same_as(*f.space())) throw SpaceMismatch("profile and function live on different spaces");
    for (int i = 0; i < profile.size(); ++i)
        if (f.in_domain(i) && !is_finite(profile.values[i])) return false;
    return true;
}

ModulusOperator ModulusOperator::global() {
    ModulusOperator op;
    op.kind_ = ModulusKind::global;
    op.name_ = "global";
    return op;
}

ModulusOperator ModulusOperator::local(std::vector<double> radius_schedule) {
    require_schedule(radius_schedule);
    ModulusOperator op;
    op.kind_ = ModulusKind::local;
    op.name_ = "local";
    op.schedule_ = std::move(radius_schedule);
    return op;
}

ModulusOperator ModulusOperator::average(Measure mu) {
    ModulusOperator op;
    op.kind_ = ModulusKind::average;
    op.name_ = "average";
    op.mu_ = std::move(mu);
    return op;
}

ModulusOperator ModulusOperator::diffusion(Measure mu, std::vector<double> eps_schedule) {
    require_schedule(eps_schedule);
    ModulusOperator op;
    op.kind_ = ModulusKind::diffusion;
    op.name_ = "diffusion";
    op.mu_ = std::move(mu);
    op.schedule_ = std::move(eps_schedule);
    return op;
}

ModulusOperator ModulusOperator::composed_with(const Theta& phi) const {
    if (!phi.valid()) throw Error("invalid_gauge", "composition gauge must be strictly increasing with phi(0)=0");
    ModulusOperator op;
    op.kind_ = ModulusKind::composed;
    op.name_ = phi.name() + " o " + name_;
    op.phi_ = phi;
    op.base_ = std::make_shared<ModulusOperator>(*this);
    return op;
}

ModulusProfile ModulusOperator::apply(const ExtendedFunction& f) const {
    switch (kind_) {
        case ModulusKind::global: return global_slope(f);
        case ModulusKind::local: return local_slope(f, schedule_);
        case ModulusKind::average: return average_descent(f, *mu_);
        case ModulusKind::diffusion: return diffusion_descent(f, *mu_, schedule_);
        case ModulusKind::composed: {
            ModulusProfile inner = base_->apply(f);
            ModulusProfile out = compose_modulus(*phi_, inner);
            out.tag = name_;
            return out;
        }
        default: throw Error("unsupported_modulus", "operator kind has no direct evaluation");
    }
}

}  // namespace slopelab
