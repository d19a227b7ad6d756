#include "slopelab/metric_space.hpp"

#include <cmath>
#include <cstddef>
#include <sstream>

#include "slopelab/errors.hpp"
#include "slopelab/extended_real.hpp"

namespace slopelab {

namespace {

void require_square(const std::vector<std::vector<double>>& m) {
    const std::size_t n = m.size();
    if (n == 0) throw MetricViolation(MetricViolation::Kind::asymmetry, -1, -1, -1, "empty distance matrix");
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) {
            std::ostringstream os;
            os << "distance matrix is not square: row " << i << " has " << m[i].size() << " entries, expected " << n;
            throw MetricViolation(MetricViolation::Kind::asymmetry, static_cast<int>(i), -1, -1, os.str());
        }
    }
}

void require_admissible_entries(const std::vector<std::vector<double>>& m) {
    const int n = static_cast<int>(m.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double v = m[i][j];
            if (!std::isfinite(v) || v < 0.0) {
                std::ostringstream os;
                os << "distance entry (" << i << "," << j << ") = " << v << " is not a finite nonnegative real";
                throw MetricViolation(MetricViolation::Kind::asymmetry, i, j, -1, os.str());
            }
        }
    }
}

// Shared validation for the finite flavor; scan order fixes which violation is
// reported first: diagonal, symmetry, zero off-diagonal, then triangles in
// lexicographic (i,j,k) order checking d(i,j) <= d(i,k) + d(k,j).
void validate_metric(const std::vector<std::vector<double>>& m) {
    const int n = static_cast<int>(m.size());
    for (int i = 0; i < n; ++i) {
        if (m[i][i] != 0.0) {
            std::ostringstream os;
            os << "d(" << i << "," << i << ") = " << m[i][i] << " but the diagonal must be zero";
            throw MetricViolation(MetricViolation::Kind::nonzero_diagonal, i, i, -1, os.str());
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (m[i][j] != m[j][i]) {
                std::ostringstream os;
                os << "d(" << i << "," << j << ") = " << m[i][j] << " differs from d(" << j << "," << i << ") = "
                   << m[j][i];
                throw MetricViolation(MetricViolation::Kind::asymmetry, i, j, -1, os.str());
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (m[i][j] == 0.0) {
                std::ostringstream os;
                os << "d(" << i << "," << j << ") = 0 for distinct points";
                throw MetricViolation(MetricViolation::Kind::zero_off_diagonal, i, j, -1, os.str());
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                if (m[i][j] > m[i][k] + m[k][j]) {
                    std::ostringstream os;
                    os << "triangle inequality fails: d(" << i << "," << j << ") = " << m[i][j] << " > d(" << i << ","
                       << k << ") + d(" << k << "," << j << ") = " << m[i][k] + m[k][j];
                    throw MetricViolation(MetricViolation::Kind::triangle, i, j, k, os.str());
                }
            }
        }
    }
}

}  // namespace

SpacePtr MetricSpace::finite(const std::vector<std::vector<double>>& distances) {
    require_square(distances);
    require_admissible_entries(distances);
    validate_metric(distances);
    auto space = std::shared_ptr<MetricSpace>(new MetricSpace());
    space->kind_ = SpaceKind::finite;
    space->n_ = static_cast<int>(distances.size());
    space->dist_.reserve(static_cast<std::size_t>(space->n_) * space->n_);
    for (const auto& row : distances)
        for (double v : row) space->dist_.push_back(v);
    return space;
}

SpacePtr MetricSpace::grid1d(double a, double b, int nodes) {
    if (!(std::isfinite(a) && std::isfinite(b) && a < b))
        throw PreconditionError("grid1d requires finite endpoints with a < b");
    if (nodes < 2) throw PreconditionError("grid1d requires at least 2 nodes");
    auto space = std::shared_ptr<MetricSpace>(new MetricSpace());
    space->kind_ = SpaceKind::grid1d;
    space->n_ = nodes;
    space->a_ = a;
    space->b_ = b;
    space->step_ = (b - a) / (nodes - 1);
    return space;
}

SpacePtr MetricSpace::analytic2d(const Rect& domain) {
    if (!(domain.x0 < domain.x1 && domain.y0 < domain.y1))
        throw PreconditionError("analytic2d requires a nondegenerate rectangle");
    auto space = std::shared_ptr<MetricSpace>(new MetricSpace());
    space->kind_ = SpaceKind::analytic2d;
    space->n_ = 0;
    space->rect_ = domain;
    return space;
}

double MetricSpace::diameter() const {
    if (kind_ == SpaceKind::grid1d) return b_ - a_;
    double best = 0.0;
    for (double v : dist_)
        if (v > best) best = v;
    return best;
}

double MetricSpace::min_positive_distance() const {
    if (kind_ == SpaceKind::grid1d) return step_;
    double best = kInf;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) {
            const double v = distance(i, j);
            if (v > 0.0 && v < best) best = v;
        }
    return best;
}

bool MetricSpace::same_as(const MetricSpace& other) const {
    if (this == &other) return true;
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case SpaceKind::finite:
            return n_ == other.n_ && dist_ == other.dist_;
        case SpaceKind::grid1d:
            return n_ == other.n_ && a_ == other.a_ && b_ == other.b_;
        case SpaceKind::analytic2d:
            return rect_.x0 == other.rect_.x0 && rect_.x1 == other.rect_.x1 && rect_.y0 == other.rect_.y0 &&
                   rect_.y1 == other.rect_.y1;
    }
    return false;
}

SpacePtr metric_repair(const std::vector<std::vector<double>>& weights) {
    require_square(weights);
    require_admissible_entries(weights);
    const int n = static_cast<int>(weights.size());
    for (int i = 0; i < n; ++i) {
        if (weights[i][i] != 0.0)
            throw MetricViolation(MetricViolation::Kind::nonzero_diagonal, i, i, -1,
                                  "metric_repair input must have a zero diagonal");
        for (int j = i + 1; j < n; ++j)
            if (weights[i][j] != weights[j][i])
                throw MetricViolation(MetricViolation::Kind::asymmetry, i, j, -1,
                                      "metric_repair input must be symmetric");
    }

    std::vector<std::vector<double>> d = weights;
    // Floyd–Warshall sweeps repeated to a fixpoint: one pass already yields the
    // min-plus closure in exact arithmetic, but re-sweeping until nothing
    // changes makes the result idempotent and triangle-clean on stored floats
    // (path sums re-associated during validation can otherwise round 1 ulp
    // below a previously accepted value).
    bool changed = true;
    while (changed) {  // terminates: entries strictly decrease within a finite float lattice
        changed = false;
        for (int k = 0; k < n; ++k) {
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    const double via = d[i][k] + d[k][j];
                    if (via < d[i][j]) {
                        d[i][j] = via;
                        d[j][i] = via;
                        changed = true;
                    }
                }
            }
        }
    }

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (d[i][j] == 0.0) {
                std::ostringstream os;
                os << "closure glues distinct points " << i << " and " << j;
                throw ZeroDistanceCollision(i, j, os.str());
            }
        }
    }
    return MetricSpace::finite(d);
}

}  // namespace slopelab
