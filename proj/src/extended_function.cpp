#include "slopelab/extended_function.hpp"

#include <cmath>
#include <sstream>

#include "slopelab/errors.hpp"
#include "slopelab/extended_real.hpp"

namespace slopelab {

namespace {

void require_indexed_space(const SpacePtr& space, const char* who) {
    if (!space) throw PreconditionError(std::string(who) + ": null space handle");
    if (space->kind() == SpaceKind::analytic2d)
        throw PreconditionError(std::string(who) + ": analytic2d spaces carry no node list; "
                                                   "use SmoothFunction2D for coordinate evaluation");
}

}  // namespace

ExtendedFunction::ExtendedFunction(SpacePtr space, std::vector<double> values, bool analytic_gradient)
    : space_(std::move(space)), values_(std::move(values)), analytic_gradient_(analytic_gradient) {
    require_indexed_space(space_, "ExtendedFunction");
    if (static_cast<int>(values_.size()) != space_->size()) {
        std::ostringstream os;
        os << "ExtendedFunction: " << values_.size() << " values for a space of " << space_->size() << " points";
        throw SpaceMismatch(os.str());
    }
    bool proper = false;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!is_extended_value(values_[i])) {
            std::ostringstream os;
            os << "value at point " << i << " is " << values_[i] << "; only finite reals and +inf are admissible";
            throw PreconditionError(os.str());
        }
        if (std::isfinite(values_[i])) proper = true;
    }
    if (!proper) throw PreconditionError("ExtendedFunction must be proper: all values are +inf");
}

bool ExtendedFunction::in_domain(int i) const { return std::isfinite(values_[i]); }

std::vector<int> ExtendedFunction::domain() const {
    std::vector<int> dom;
    for (int i = 0; i < size(); ++i)
        if (in_domain(i)) dom.push_back(i);
    return dom;
}

int ExtendedFunction::domain_size() const {
    int count = 0;
    for (int i = 0; i < size(); ++i)
        if (in_domain(i)) ++count;
    return count;
}

double ExtendedFunction::finite_min() const { return values_[argmin()]; }

int ExtendedFunction::argmin() const {
    int best = -1;
    for (int i = 0; i < size(); ++i) {
        if (!in_domain(i)) continue;
        if (best < 0 || values_[i] < values_[best]) best = i;
    }
    return best;  // construction guarantees a finite value exists
}

ExtendedFunction ExtendedFunction::shifted(double c) const {
    std::vector<double> out(values_);
    for (double& v : out)
        if (std::isfinite(v)) v += c;
    return ExtendedFunction(space_, std::move(out), analytic_gradient_);
}

ExtendedFunction ExtendedFunction::scaled(double r) const {
    if (!(r > 0.0) || !std::isfinite(r))
        throw PreconditionError("scaling factor must be positive and finite");
    std::vector<double> out(values_);
    for (double& v : out)
        if (std::isfinite(v)) v *= r;
    return ExtendedFunction(space_, std::move(out), analytic_gradient_);
}

PointSet sublevel_set(const ExtendedFunction& f, double r) {
    std::vector<int> members;
    for (int i = 0; i < f.size(); ++i)
        if (f.in_domain(i) && f.value(i) <= r) members.push_back(i);
    return PointSet(f.space(), std::move(members));
}

ExtendedFunction truncate(const ExtendedFunction& f, const PointSet& K) {
    if (K.space() && !K.space()->same_as(*f.space()))
        throw SpaceMismatch("truncate: point set lives on a different space than f");
    std::vector<double> out(f.values().size(), kInf);
    bool proper = false;
    for (int i : K.indices()) {
        out[i] = f.value(i);
        if (std::isfinite(out[i])) proper = true;
    }
    if (!proper) throw EmptyTruncation("truncate: K carries no finite value of f");
    return ExtendedFunction(f.space(), std::move(out), f.analytic_gradient());
}

Measure::Measure(SpacePtr space, std::vector<double> samples)
    : space_(std::move(space)), samples_(std::move(samples)) {
    require_indexed_space(space_, "Measure");
    if (static_cast<int>(samples_.size()) != space_->size()) {
        std::ostringstream os;
        os << "Measure: " << samples_.size() << " samples for a space of " << space_->size() << " points";
        throw SpaceMismatch(os.str());
    }
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        if (!std::isfinite(samples_[i]) || samples_[i] < 0.0) {
            std::ostringstream os;
            os << "measure sample at point " << i << " is " << samples_[i] << "; must be finite and nonnegative";
            throw PreconditionError(os.str());
        }
    }
    if (!(total_mass() > 0.0)) throw PreconditionError("Measure must have positive total mass");
}

Measure Measure::weights(SpacePtr space, std::vector<double> w) {
    if (space && space->kind() != SpaceKind::finite)
        throw PreconditionError("Measure::weights expects a finite space; use density on grids");
    return Measure(std::move(space), std::move(w));
}

Measure Measure::density(SpacePtr space, std::vector<double> rho) {
    if (space && space->kind() != SpaceKind::grid1d)
        throw PreconditionError("Measure::density expects a grid1d space; use weights on finite spaces");
    return Measure(std::move(space), std::move(rho));
}

Measure Measure::lebesgue(SpacePtr grid) {
    if (!grid || grid->kind() != SpaceKind::grid1d)
        throw PreconditionError("Measure::lebesgue expects a grid1d space");
    const int n = grid->size();
    return Measure(std::move(grid), std::vector<double>(n, 1.0));
}

Measure Measure::uniform_probability(SpacePtr finite_space) {
    if (!finite_space || finite_space->kind() != SpaceKind::finite)
        throw PreconditionError("Measure::uniform_probability expects a finite space");
    const int n = finite_space->size();
    return Measure(std::move(finite_space), std::vector<double>(n, 1.0 / n));
}

double Measure::total_mass() const {
    if (space_->kind() == SpaceKind::finite) return pairwise_sum(samples_);
    // Composite trapezoid of the density over the grid.
    const double h = space_->grid_step();
    std::vector<double> cells;
    cells.reserve(samples_.size());
    for (std::size_t i = 0; i + 1 < samples_.size(); ++i) cells.push_back(0.5 * h * (samples_[i] + samples_[i + 1]));
    return pairwise_sum(cells);
}

bool Measure::is_probability(double tol) const { return std::fabs(total_mass() - 1.0) <= tol; }

}  // namespace slopelab
