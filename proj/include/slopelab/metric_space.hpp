#pragma once

#include <memory>
#include <vector>

namespace slopelab {

enum class SpaceKind { finite, grid1d, analytic2d };

// Closed axis-aligned rectangle [x0,x1] x [y0,y1] in the plane.
struct Rect {
    double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;

    bool contains(double x, double y) const {
        return x >= x0 && x <= x1 && y >= y0 && y <= y1;
    }
};

class MetricSpace;
using SpacePtr = std::shared_ptr<const MetricSpace>;

// A metric space in one of three flavors:
//   finite     — n points with an explicit validated distance matrix,
//   grid1d     — uniform nodes on [a,b] with the induced metric |x - y|,
//   analytic2d — a rectangle in the plane with the Euclidean metric,
//                evaluated by coordinates (no node list).
// Instances are immutable after construction and safe to share across threads.
class MetricSpace {
public:
    // Validates all metric axioms (exhaustive triangle check); throws
    // MetricViolation identifying the first failing entry or triple.
    static SpacePtr finite(const std::vector<std::vector<double>>& distances);

    // nodes >= 2 equally spaced points on [a, b], step (b-a)/(nodes-1).
    static SpacePtr grid1d(double a, double b, int nodes);

    static SpacePtr analytic2d(const Rect& domain);

    SpaceKind kind() const { return kind_; }

    // Number of indexed points (0 for analytic2d, which has no node list).
    int size() const { return n_; }

    double distance(int i, int j) const {
        if (kind_ == SpaceKind::finite) return dist_[static_cast<std::size_t>(i) * n_ + j];
        const int gap = i >= j ? i - j : j - i;
        return gap * step_;
    }

    // Grid node coordinate a + i*h (grid1d only).
    double coord(int i) const { return a_ + i * step_; }

    double grid_a() const { return a_; }
    double grid_b() const { return b_; }
    double grid_step() const { return step_; }

    const Rect& rect() const { return rect_; }

    double diameter() const;
    double min_positive_distance() const;

    // Structural equality: same kind and identical defining data (bitwise on
    // stored floats). Shared handles compare equal trivially.
    bool same_as(const MetricSpace& other) const;

    const std::vector<double>& raw_distances() const { return dist_; }

private:
    MetricSpace() = default;

    SpaceKind kind_ = SpaceKind::finite;
    int n_ = 0;
    std::vector<double> dist_;  // finite: row-major n x n
    double a_ = 0.0, b_ = 0.0, step_ = 0.0;  // grid1d
    Rect rect_;                              // analytic2d

    friend SpacePtr metric_repair(const std::vector<std::vector<double>>& weights);
};

// Min-plus (all-pairs shortest path) closure of a symmetric nonnegative weight
// matrix with zero diagonal; iterated to a fixpoint so the result is exactly
// idempotent and passes the exhaustive triangle check on stored floats.
// Throws ZeroDistanceCollision if the closure glues two distinct points.
SpacePtr metric_repair(const std::vector<std::vector<double>>& weights);

}  // namespace slopelab
