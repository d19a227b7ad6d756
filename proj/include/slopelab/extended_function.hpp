#pragma once

#include <vector>

#include "slopelab/metric_space.hpp"
#include "slopelab/point_set.hpp"

namespace slopelab {

// An extended-real-valued function on the indexed points of a finite or grid
// space: every point stores a value that is either finite or exactly +inf.
// Construction enforces properness (at least one finite value) and rejects
// NaN and -inf. Immutable after construction.
class ExtendedFunction {
public:
    ExtendedFunction(SpacePtr space, std::vector<double> values, bool analytic_gradient = false);

    const SpacePtr& space() const { return space_; }
    const std::vector<double>& values() const { return values_; }
    int size() const { return static_cast<int>(values_.size()); }

    double value(int i) const { return values_[i]; }
    bool in_domain(int i) const;
    std::vector<int> domain() const;
    int domain_size() const;

    // Minimum over the (nonempty) domain.
    double finite_min() const;
    // Smallest index attaining finite_min.
    int argmin() const;

    // Metadata: values tabulated from a closed form with an available analytic
    // gradient/slope (informational; carried through serialization).
    bool analytic_gradient() const { return analytic_gradient_; }

    ExtendedFunction shifted(double c) const;  // f + c (pointwise on the domain)
    ExtendedFunction scaled(double r) const;   // r * f, r > 0

private:
    SpacePtr space_;
    std::vector<double> values_;
    bool analytic_gradient_ = false;
};

// {x : f(x) <= r}; +inf values are excluded for any finite r.
PointSet sublevel_set(const ExtendedFunction& f, double r);

// f + i_K: equals f on K, +inf off K. Throws EmptyTruncation when K carries no
// finite value of f (the result would be improper).
ExtendedFunction truncate(const ExtendedFunction& f, const PointSet& K);

// A finite nonnegative measure: per-point weights on finite spaces, density
// samples (trapezoid quadrature) on grids. Total mass must be positive but may
// exceed 1 — the average-descent counterexample integrates against Lebesgue
// measure on a truncated half-line.
class Measure {
public:
    static Measure weights(SpacePtr space, std::vector<double> w);   // finite spaces
    static Measure density(SpacePtr space, std::vector<double> rho); // grid1d
    static Measure lebesgue(SpacePtr grid);                          // density ≡ 1
    static Measure uniform_probability(SpacePtr finite_space);       // weight 1/n each

    const SpacePtr& space() const { return space_; }
    const std::vector<double>& samples() const { return samples_; }
    double sample(int i) const { return samples_[i]; }

    // Sum of weights (finite) or trapezoid mass of the density (grid1d).
    double total_mass() const;
    bool is_probability(double tol) const;

private:
    Measure(SpacePtr space, std::vector<double> samples);

    SpacePtr space_;
    std::vector<double> samples_;
};

}  // namespace slopelab
