#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace slopelab {

// A strictly increasing continuous functional θ: [0,∞) → [0,∞) with θ(0)=0 and
// θ(t) → +∞, as used by both metric-compatibility definitions and by modulus
// composition. Closed forms carry exact inverses; custom evaluators fall back
// to monotone bisection for the inverse.
class Theta {
public:
    enum class Kind { identity, linear, ratio, power, custom, composed };

    static Theta identity();
    // t ↦ slope * t, slope > 0.
    static Theta linear(double slope);
    // t ↦ ρ t / (1+ρ): the gauge family used by ratio-compatibility witnesses.
    static Theta ratio(double rho);
    // t ↦ t^p, p > 0.
    static Theta power(double p);
    static Theta custom(std::string name, std::function<double(double)> eval);
    // outer ∘ inner.
    static Theta compose(const Theta& outer, const Theta& inner);
    // The inverse functional (exact for closed forms; bisection for custom).
    Theta inverted() const;

    double operator()(double t) const;  // maps +inf to +inf
    double inverse(double s) const;

    Kind kind() const { return kind_; }
    double parameter() const { return param_; }
    const std::string& name() const { return name_; }

    // Checks strict growth, θ(0)=0, and divergence on a sample ladder; returns
    // false with no side effects if any probe fails.
    bool valid_on_ladder(const std::vector<double>& ladder) const;
    bool valid() const;  // default ladder {0, 1e-6, 1e-3, 0.1, 1, 10, 1e3, 1e6}

private:
    Theta() = default;

    Kind kind_ = Kind::identity;
    double param_ = 1.0;
    bool inverse_flag_ = false;  // closed-form kinds: evaluate the inverse map instead
    std::string name_ = "identity";
    std::function<double(double)> eval_;                  // custom
    std::shared_ptr<const Theta> outer_, inner_;          // composed
};

}  // namespace slopelab
