#include "slopelab/theta.hpp"

#include <cmath>
#include <sstream>

#include "slopelab/errors.hpp"
#include "slopelab/extended_real.hpp"

namespace slopelab {

Theta Theta::identity() { return Theta(); }

Theta Theta::linear(double slope) {
    if (!(slope > 0.0) || !std::isfinite(slope)) throw PreconditionError("Theta::linear requires slope > 0");
    Theta t;
    t.kind_ = Kind::linear;
    t.param_ = slope;
    std::ostringstream os;
    os << slope << "*t";
    t.name_ = os.str();
    return t;
}

Theta Theta::ratio(double rho) {
    if (!(rho > 0.0) || !std::isfinite(rho)) throw PreconditionError("Theta::ratio requires rho > 0");
    Theta t;
    t.kind_ = Kind::ratio;
    t.param_ = rho;
    std::ostringstream os;
    os << "rho*t/(1+rho), rho=" << rho;
    t.name_ = os.str();
    return t;
}

Theta Theta::power(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw PreconditionError("Theta::power requires p > 0");
    Theta t;
    t.kind_ = Kind::power;
    t.param_ = p;
    std::ostringstream os;
    os << "t^" << p;
    t.name_ = os.str();
    return t;
}

Theta Theta::custom(std::string name, std::function<double(double)> eval) {
    Theta t;
    t.kind_ = Kind::custom;
    t.name_ = std::move(name);
    t.eval_ = std::move(eval);
    return t;
}

Theta Theta::compose(const Theta& outer, const Theta& inner) {
    Theta t;
    t.kind_ = Kind::composed;
    t.name_ = outer.name_ + " o " + inner.name_;
    t.outer_ = std::make_shared<Theta>(outer);
    t.inner_ = std::make_shared<Theta>(inner);
    return t;
}

Theta Theta::inverted() const {
    switch (kind_) {
        case Kind::identity:
        case Kind::linear:
        case Kind::ratio:
        case Kind::power: {
            Theta t(*this);
            t.inverse_flag_ = !inverse_flag_;
            t.name_ = "inv(" + name_ + ")";
            return t;
        }
        case Kind::composed:
            // (outer ∘ inner)^{-1} = inner^{-1} ∘ outer^{-1}
            return compose(inner_->inverted(), outer_->inverted());
        case Kind::custom: {
            Theta self(*this);
            return custom("inv(" + name_ + ")", [self](double s) { return self.inverse(s); });
        }
    }
    throw PreconditionError("Theta::inverted: unreachable kind");
}

double Theta::operator()(double t) const {
    if (t == kInf) return kInf;
    if (inverse_flag_) {
        // Closed-form kinds store the forward parameters; inverse_flag_ asks
        // for the inverse map instead.
        switch (kind_) {
            case Kind::identity: return t;
            case Kind::linear: return t / param_;
            case Kind::ratio: return t * (1.0 + param_) / param_;
            case Kind::power: return param_ == 2.0 ? std::sqrt(t) : std::pow(t, 1.0 / param_);
            default: break;
        }
    }
    switch (kind_) {
        case Kind::identity: return t;
        case Kind::linear: return param_ * t;
        case Kind::ratio: return param_ * t / (1.0 + param_);
        case Kind::power: return param_ == 2.0 ? t * t : std::pow(t, param_);
        case Kind::custom: return eval_(t);
        case Kind::composed: return (*outer_)((*inner_)(t));
    }
    throw PreconditionError("Theta::operator(): unreachable kind");
}

double Theta::inverse(double s) const {
    if (s == kInf) return kInf;
    switch (kind_) {
        case Kind::identity:
        case Kind::linear:
        case Kind::ratio:
        case Kind::power:
            return inverted()(s);
        case Kind::composed:
            return inner_->inverse(outer_->inverse(s));
        case Kind::custom: {
            if (s <= 0.0) return 0.0;
            // Monotone bisection on an expanding bracket.
            double hi = 1.0;
            int guard = 0;
            while (eval_(hi) < s && guard++ < 2100) hi *= 2.0;
            double lo = 0.0;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (eval_(mid) < s)
                    lo = mid;
                else
                    hi = mid;
            }
            return 0.5 * (lo + hi);
        }
    }
    throw PreconditionError("Theta::inverse: unreachable kind");
}

bool Theta::valid_on_ladder(const std::vector<double>& ladder) const {
    if (ladder.size() < 2) return false;
    if ((*this)(0.0) != 0.0) return false;
    double prev_arg = -1.0, prev_val = -1.0;
    for (double t : ladder) {
        if (!(t >= 0.0)) return false;
        const double v = (*this)(t);
        if (!(v >= 0.0) || !std::isfinite(v)) return false;
        if (prev_arg >= 0.0 && t > prev_arg && !(v > prev_val)) return false;
        prev_arg = t;
        prev_val = v;
    }
    // Divergence probe: a bounded functional flattens out, so the value at the
    // top of the ladder must still clearly exceed the value one rung below.
    const double top = (*this)(ladder.back());
    const double below = (*this)(ladder[ladder.size() - 2]);
    return top > 1.5 * below;
}

bool Theta::valid() const {
    return valid_on_ladder({0.0, 1e-6, 1e-3, 0.1, 1.0, 10.0, 1e3, 1e6});
}

}  // namespace slopelab
