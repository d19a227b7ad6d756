#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slopelab/extended_function.hpp"
#include "slopelab/metric_space.hpp"
#include "slopelab/point_set.hpp"
#include "slopelab/theta.hpp"

namespace slopelab {

enum class ModulusKind { local, global, average, diffusion, composed, analytic };

std::string to_string(ModulusKind kind);

// The per-point value of a descent operator T[f]: finite nonnegative inside
// dom f (when f ∈ dom T), +inf off dom f. Schedule-based operators (local
// slope, diffusion) also record a per-point stabilization diagnostic: the
// spread (max - min) of the values over the last 3 schedule entries, an
// explicit surrogate-quality measure for the limsup they approximate.
struct ModulusProfile {
    SpacePtr space;
    ModulusKind kind = ModulusKind::global;
    std::string tag;  // human-readable generator label, e.g. "global" or "2*t o global"
    std::vector<double> values;
    std::vector<double> stabilization;  // empty unless schedule-based

    double value(int i) const { return values[i]; }
    int size() const { return static_cast<int>(values.size()); }
    double max_stabilization() const;
};

// {f(x)-f(y)}^+ / d(x,y) for x != y; 0 on the diagonal. Targets with
// f(y) = +inf contribute 0 via the extended-real convention. Throws
// DomainError if f(x) = +inf.
double delta_plus(const ExtendedFunction& f, int x, int y);

// G[f](x) = sup_y Δ⁺f(x,y): exact max over all points (finite) or nodes
// (grid1d); +inf off dom f.
ModulusProfile global_slope(const ExtendedFunction& f);

// s[f](x) ≈ sup_{0<d(x,y)<=r} Δ⁺f(x,y) at the smallest schedule radius r,
// with the stabilization diagnostic across the schedule; 0 at points whose
// punctured ball is empty; +inf off dom f. The schedule must be nonempty,
// positive, and strictly decreasing (ScheduleError otherwise).
ModulusProfile local_slope(const ExtendedFunction& f, const std::vector<double>& radius_schedule);

// M[f](x) = ∫ Δ⁺f(x,y) μ(dy): weighted sum on finite spaces (the atom at
// y=x contributes 0 by the 0/0 convention); trapezoid quadrature on grids with
// the removable singularity at y=x filled per side by clamped linear
// extrapolation (see average_descent_at).
ModulusProfile average_descent(const ExtendedFunction& f, const Measure& mu);
double average_descent_at(const ExtendedFunction& f, const Measure& mu, int x);

// D[f](x) ≈ (1/μ(B(x,ε))) ∫_{B(x,ε)} Δ⁺f(x,y) μ(dy) at the smallest schedule
// radius, with stabilization diagnostic; balls are open. Throws EmptyBall when
// a realized ball has zero measure.
ModulusProfile diffusion_descent(const ExtendedFunction& f, const Measure& mu,
                                 const std::vector<double>& eps_schedule);

// Z_T(f) at tolerance tol: {x : profile(x) <= tol}.
PointSet critical_set(const ModulusProfile& profile, double tol);

// phi ∘ T pointwise, phi(+inf) = +inf; preserves the zero set exactly.
ModulusProfile compose_modulus(const Theta& phi, const ModulusProfile& profile);

// f ∈ dom T: the profile is finite on all of dom f.
bool modulus_domain(const ModulusProfile& profile, const ExtendedFunction& f);

// A reusable handle for "one of the four paradigms (possibly composed with a
// strictly increasing functional)", so axiom checkers and the descent engine
// can be written once. Immutable; apply() is pure.
class ModulusOperator {
public:
    static ModulusOperator global();
    static ModulusOperator local(std::vector<double> radius_schedule);
    static ModulusOperator average(Measure mu);
    static ModulusOperator diffusion(Measure mu, std::vector<double> eps_schedule);

    // phi ∘ T for a valid strictly increasing phi with phi(0)=0.
    ModulusOperator composed_with(const Theta& phi) const;

    ModulusProfile apply(const ExtendedFunction& f) const;
    ModulusKind kind() const { return kind_; }
    const std::string& name() const { return name_; }

private:
    ModulusOperator() = default;

    ModulusKind kind_ = ModulusKind::global;
    std::string name_ = "global";
    std::vector<double> schedule_;
    std::optional<Measure> mu_;
    std::optional<Theta> phi_;                     // outermost composition
    std::shared_ptr<const ModulusOperator> base_;  // composed: the inner operator
};

}  // namespace slopelab
