#pragma once

#include <stdexcept>
#include <string>

namespace slopelab {

// Base class for every typed failure raised by the library. `code()` returns a
// stable machine-readable identifier used by the CLI when mapping failures to
// exit statuses and report fields.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// A distance matrix breaks one of the metric axioms. `i,j,k` identify the
// first offending entry or triple (unused indices are -1).
class MetricViolation : public Error {
public:
    enum class Kind { asymmetry, zero_off_diagonal, triangle, nonzero_diagonal };

    MetricViolation(Kind kind, int i, int j, int k, const std::string& what)
        : Error("metric_violation", what), kind(kind), i(i), j(j), k(k) {}

    Kind kind;
    int i, j, k;
};

// Min-plus closure produced d(x,y)=0 for distinct points x != y.
class ZeroDistanceCollision : public Error {
public:
    ZeroDistanceCollision(int i, int j)
        : ZeroDistanceCollision(i, j, "metric closure glued distinct points " + std::to_string(i) +
                                          " and " + std::to_string(j)) {}
    ZeroDistanceCollision(int i, int j, const std::string& what)
        : Error("zero_distance_collision", what), i(i), j(j) {}

    int i, j;
};

// Truncation K ∩ dom f = ∅ would yield an improper function.
class EmptyTruncation : public Error {
public:
    explicit EmptyTruncation(const std::string& what) : Error("empty_truncation", what) {}
};

// An operation was evaluated at a point outside the domain of its function.
class DomainError : public Error {
public:
    explicit DomainError(int point)
        : DomainError(point, "point " + std::to_string(point) + " is outside the function domain") {}
    DomainError(int point, const std::string& what) : Error("domain_error", what), point(point) {}

    int point;
};

// A radius schedule is empty, non-positive, or not strictly decreasing.
class ScheduleError : public Error {
public:
    explicit ScheduleError(const std::string& what) : Error("schedule_error", what) {}
};

// Two arguments live on different metric spaces.
class SpaceMismatch : public Error {
public:
    explicit SpaceMismatch(const std::string& what) : Error("space_mismatch", what) {}
};

// A schedule ball B(x, eps) carries zero measure.
class EmptyBall : public Error {
public:
    EmptyBall(int point, double radius)
        : EmptyBall(point, radius, "ball around point " + std::to_string(point) + " of radius " +
                                       std::to_string(radius) + " carries zero measure") {}
    EmptyBall(int point, double radius, const std::string& what)
        : Error("empty_ball", what), point(point), radius(radius) {}

    int point;
    double radius;
};

// A checker was invoked on an instance that violates its stated precondition.
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what) : Error("precondition_error", what) {}
};

// An exhaustive witness search failed: the instance refutes compatibility.
class NoWitness : public Error {
public:
    explicit NoWitness(const std::string& what) : Error("no_witness", what) {}
};

// delta_mix requested at a point where a profile is infinite.
class InfiniteModulus : public Error {
public:
    explicit InfiniteModulus(int point)
        : InfiniteModulus(point, "modulus is infinite at point " + std::to_string(point)) {}
    InfiniteModulus(int point, const std::string& what)
        : Error("infinite_modulus", what), point(point) {}

    int point;
};

// A single descent step was requested from a point that is already critical.
class CriticalPoint : public Error {
public:
    explicit CriticalPoint(int point)
        : CriticalPoint(point, "point " + std::to_string(point) + " is already critical") {}
    CriticalPoint(int point, const std::string& what)
        : Error("critical_point", what), point(point) {}

    int point;
};

// A sequence handed to a criticality analysis contains a critical point.
class CriticalMember : public Error {
public:
    explicit CriticalMember(int index)
        : CriticalMember(index, "sequence entry " + std::to_string(index) + " is already critical") {}
    CriticalMember(int index, const std::string& what)
        : Error("critical_member", what), index(index) {}

    int index;  // position within the sequence
};

// An enumeration would exceed its configured budget.
class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(const std::string& what) : Error("budget_exceeded", what) {}
};

// A curve is too short to resample at the requested arc-length spacing.
class DegenerateCurve : public Error {
public:
    explicit DegenerateCurve(const std::string& what) : Error("degenerate_curve", what) {}
};

// Fixed-step integration observed g∘γ increasing between nodes: dt too coarse.
class StepTooLarge : public Error {
public:
    explicit StepTooLarge(double t)
        : StepTooLarge(t, "objective increased along the flow near t = " + std::to_string(t) +
                              "; reduce the step size") {}
    StepTooLarge(double t, const std::string& what) : Error("step_too_large", what), t(t) {}

    double t;
};

// A comparison premise (e.g. ‖∇f‖ ≤ ‖∇g‖) failed at parameter value t.
class HypothesisFailure : public Error {
public:
    explicit HypothesisFailure(double t)
        : HypothesisFailure(t, "comparison premise failed at t = " + std::to_string(t)) {}
    HypothesisFailure(double t, const std::string& what)
        : Error("hypothesis_failure", what), t(t) {}

    double t;
};

}  // namespace slopelab
