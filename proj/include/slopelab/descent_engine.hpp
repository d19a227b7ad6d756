#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "slopelab/axioms.hpp"
#include "slopelab/extended_function.hpp"
#include "slopelab/moduli.hpp"
#include "slopelab/serialization.hpp"
#include "slopelab/theta.hpp"

namespace slopelab {

// ---------------------------------------------------------------------------
// Step size selection
// ---------------------------------------------------------------------------

// Midpoint threshold delta(x) = T[f](x)/2 + T[g](x)/2. Both profiles must be
// finite at x. Whenever T[f](x) < T[g](x) this lands strictly between the two
// moduli, and T[g](x) < 2*delta(x) always holds, which is what turns per-step
// decrease into the telescoping length bound of a full run.
double delta_mix(const ModulusProfile& profile_f, const ModulusProfile& profile_g, int x);
double delta_mix(double modulus_f_at_x, double modulus_g_at_x, int x);

// ---------------------------------------------------------------------------
// Descent traces
// ---------------------------------------------------------------------------

// One completed step: the point it left, the values there, the threshold that
// drove the witness search, and the distance to the next point.
struct DescentEntry {
    int point = -1;
    double g_value = 0.0;        // g(x_n) after normalization
    double f_value = 0.0;        // f(x_n) after normalization
    double delta = 0.0;          // delta(x_n)
    double step_distance = 0.0;  // d(x_n, x_{n+1}) > 0
    double running_sum = 0.0;    // sum of T[g](x_i) * d(x_i, x_{i+1}) through this step
};

enum class DescentTerminal { reached_critical, monotonicity_broken, budget_exhausted };

std::string to_string(DescentTerminal t);

struct DescentTrace {
    std::vector<DescentEntry> entries;  // one per completed step; empty when x0 already terminal
    int terminal_point = -1;
    double terminal_g = 0.0;      // g at the terminal point (normalized)
    double terminal_f = 0.0;      // f at the terminal point; +inf when outside dom f
    double terminal_delta = 0.0;  // delta there, +inf when a profile is infinite
    DescentTerminal terminal = DescentTerminal::reached_critical;
    double rho = 0.0;
    double shift = 0.0;         // both functions were shifted by this before descending
    double length_bound = 0.0;  // 2 * (g(x_0) - inf g), the cap on the final running sum
    long budget = 0;
    std::string note;  // failure code when the run stopped on a broken assumption

    double total_length() const { return entries.empty() ? 0.0 : entries.back().running_sum; }

    json to_json() const;
    std::string to_csv() const;  // header + one row per step + the terminal row
};

// One descent step: from x (non-critical, in dom g, with T[f](x) < T[g](x))
// pick the ratio-compatibility witness z at threshold delta_mix and gauge
// theta(t) = t. Throws CriticalPoint when T[g](x) = 0, InfiniteModulus when a
// profile is infinite at x, PreconditionError when the moduli are not
// sandwiched, NoWitness when the clause search comes back empty.
int descent_step(const ExtendedFunction& f, const ExtendedFunction& g, const ModulusOperator& op,
                 int x, double rho);

// Full descent run. Both functions are first shifted so that inf g = 1 (the
// clauses and the profiles are translation invariant; the recorded values are
// the shifted ones). Iterates descent_step until a critical point, a broken
// assumption, or the step budget; assumption failures become the
// monotonicity_broken terminal, never exceptions. budget <= 0 selects the
// default: 10 * |X| on finite spaces, 10^4 on grids. Every returned trace has
// been checked against verify_trace.
DescentTrace descent_run(const ExtendedFunction& f, const ExtendedFunction& g,
                         const ModulusOperator& op, int x0, double rho, long budget = 0);

// Re-derives the three trace invariants from f, g, and the operator:
//   1. strict g-decrease with 0 < delta(x_n) d(x_n, x_{n+1}) < g(x_n) - g(x_{n+1}),
//   2. f - (1+rho) g nondecreasing along entries, verified in gap form
//      {f(x_n) - f(x_{n+1})}^+ < (1+rho) {g(x_n) - g(x_{n+1})}^+ (the two are
//      equivalent in exact arithmetic; the gap form is the one the witness
//      clause certifies, so it stays true in floating point),
//   3. running sum <= length_bound.
// f and g must already carry the trace's normalization shift. Returns the
// first violated invariant as a json description, or std::nullopt.
std::optional<json> verify_trace(const DescentTrace& trace, const ExtendedFunction& f,
                                 const ExtendedFunction& g, const ModulusOperator& op);

// ---------------------------------------------------------------------------
// Sequence analysis
// ---------------------------------------------------------------------------

// Greedy strictly-decreasing subsequence: k_0 = 0, and k_{n+1} is the first
// index m > k_n with values[m] < values[k_n]. Always non-empty.
std::vector<int> monotone_subsequence(const std::vector<double>& values);

struct SequenceReport {
    std::vector<double> modulus_values;  // T[g](z_n)
    std::vector<double> gaps;            // d(z_n, z_{n+1}), one fewer than points
    std::vector<double> partial_sums;    // S_n = sum_{i<n} T[g](z_i) d(z_i, z_{i+1}); S_0 = 0
    double tail_increment = 0.0;         // S_last - S_mid over the second half
    double tail_min_gap = 0.0;           // min pairwise distance within the second half
    double gap_threshold = 0.0;          // resolved separation threshold
    double liminf_estimate = 0.0;        // min of modulus_values
    double tail_tol = 0.0;
    double liminf_tol = 0.0;
    bool summability_ok = false;  // partial sums have stopped moving
    bool divergence_ok = false;   // tail points stay separated (no convergent subsequence)
    bool liminf_zero = false;     // modulus values dip below liminf_tol

    bool all_flags() const { return summability_ok && divergence_ok && liminf_zero; }

    json to_json() const;
    std::string to_csv() const;  // header + one row per sequence index
};

// Core analysis on precomputed data: modulus values per point plus a pairwise
// distance callback. gap_threshold < 0 selects the default, half the smallest
// consecutive gap within the first quarter of the sequence. Throws
// CriticalMember when some modulus value is not strictly positive.
SequenceReport analyze_sequence(const std::vector<double>& modulus_values,
                                const std::function<double(int, int)>& distance,
                                double gap_threshold = -1.0, double tail_tol = 1e-8,
                                double liminf_tol = 1e-6);

// Same analysis for a sequence of points inside a modeled space, with the
// modulus evaluated through the operator. Throws DomainError when a point is
// outside dom g.
SequenceReport asymptotic_criticality_report(const std::vector<int>& seq, const ExtendedFunction& g,
                                             const ModulusOperator& op, double gap_threshold = -1.0,
                                             double tail_tol = 1e-8, double liminf_tol = 1e-6);

// Line variant: points are coordinates, the metric is |s - t|, and the caller
// supplies the modulus values (e.g. from a closed form).
SequenceReport asymptotic_criticality_report_line(const std::vector<double>& coords,
                                                  const std::vector<double>& modulus_values,
                                                  double gap_threshold = -1.0,
                                                  double tail_tol = 1e-8, double liminf_tol = 1e-6);

// ---------------------------------------------------------------------------
// Cauchy and infimizing diagnostics
// ---------------------------------------------------------------------------

struct CauchyReport {
    double delta = 0.0;
    int start_index = 0;     // first index from which every modulus value is >= delta
    long checked_pairs = 0;
    double min_slack = 0.0;  // min over pairs of (1/delta) * window sum - d(z_n, z_m)
    bool holds = false;      // min_slack >= 0

    json to_json() const;
};

// Verifies d(z_n, z_m) <= (1/delta) * sum_{i=n}^{m-1} T[g](z_i) d(z_i, z_{i+1})
// for all pairs start_index <= n < m. Preconditions: delta > 0; the modulus
// stays >= delta on the second half of the prefix; the partial sums have
// stopped growing (tail increment below half the head increment). Throws
// PreconditionError when either fails.
CauchyReport cauchy_check(const std::vector<double>& modulus_values,
                          const std::function<double(int, int)>& distance, double delta);
CauchyReport cauchy_check(const std::vector<int>& seq, const ExtendedFunction& g,
                          const ModulusOperator& op, double delta);

struct InfimizingReport {
    double liminf_estimate = 0.0;  // min f(z_n) over the prefix
    double inf_value = 0.0;        // infimum it is measured against
    double gap = 0.0;              // liminf_estimate - inf_value
    double tol = 0.0;
    bool holds = false;            // gap <= tol
    std::vector<int> subsequence;  // greedy decreasing-slope subsequence (indices into seq)
    bool internal_bound_ok = false;  // f(z_k) <= f(u) + G(z_k) d(z_k, u) for every sample u
    long bound_checks = 0;

    json to_json() const;
};

// Checks that the sequence drives f toward its infimum and replays the slope
// bound f(z_k) <= f(u) + G[f](z_k) d(z_k, u) along the decreasing-slope
// subsequence, where G is the global slope. u_samples defaults to the whole
// domain on modeled spaces.
InfimizingReport infimizing_check(const std::vector<int>& seq, const ExtendedFunction& f,
                                  double tol, std::vector<int> u_samples = {});

// Line variant: the slope at each z is the sampled global slope, the max
// positive-part quotient over all sequence points and u samples; inf_hint is
// the infimum the gap is measured against.
InfimizingReport infimizing_check_line(const std::vector<double>& coords,
                                       const std::function<double(double)>& f,
                                       double inf_hint, double tol,
                                       const std::vector<double>& u_samples);

// ---------------------------------------------------------------------------
// Exhaustive determination sweep
// ---------------------------------------------------------------------------

struct DeterminationReport {
    long functions = 0;   // value_grid^|X| assignments enumerated
    long classes = 0;     // distinct (global slope profile, min value) keys
    bool determined = false;  // every class is a singleton
    json collision = json::object();  // two assignments sharing a key, when found

    json to_json() const;
};

// Enumerates every function X -> value_grid (finite values), groups by the
// bit-exact pair (global slope profile, min value), and reports whether the
// pair pins down the function. Requires |X| <= 6 and |value_grid|^|X| <= 10^7
// (BudgetExceeded otherwise).
DeterminationReport determination_oracle(const SpacePtr& space,
                                         const std::vector<double>& value_grid);

// ---------------------------------------------------------------------------
// Comparison and existence
// ---------------------------------------------------------------------------

struct ComparisonReport {
    bool domination_ok = false;     // T[f] < T[g] on dom g away from critical points of g
    bool critical_set_ok = false;   // f <= g on the critical set of g
    bool hypotheses_hold = false;
    bool conclusion_observed = false;  // f <= g on dom g (checked unconditionally)
    json details;  // first violation of each failed check

    json to_json() const;
};

// Exhaustively audits the two hypotheses of the comparison principle and the
// conclusion f <= g on dom g. When both hypotheses hold the conclusion is
// asserted; when they fail, the report shows which one and where, alongside
// whether the conclusion happened to hold anyway. tol widens the critical set
// of g (profile value <= tol counts as critical).
ComparisonReport comparison_check(const ExtendedFunction& f, const ExtendedFunction& g,
                                  const ModulusOperator& op, double rho, double tol);

struct ExistenceReport {
    std::string verdict;            // found_critical | found_asymptotic | inconclusive
    std::vector<int> critical_points;
    std::vector<int> sequence;      // candidate sequence when no critical point was found
    json sequence_report = json::object();

    json to_json() const;
};

// Looks for a critical point of f under the operator: exact zeros of the
// profile first (tolerance tol on grids), then a strictly-decreasing-profile
// subsequence capped at seq_prefix_budget, analyzed for asymptotic
// criticality.
ExistenceReport critical_existence(const ExtendedFunction& f, const ModulusOperator& op,
                                   long seq_prefix_budget = 64, double tol = 1e-9);

}  // namespace slopelab
