#include "slopelab/descent_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "slopelab/errors.hpp"
#include "slopelab/extended_real.hpp"

namespace slopelab {

namespace {

double positive_gap(double from, double to) { return pos_part(from - to); }

// CSV cells reuse the JSON number formatting (shortest exact round-trip).
std::string csv_number(double v) {
    if (v == kInf) return "inf";
    return json(v).dump();
}

double mix_or_inf(double vf, double vg) {
    if (!is_finite(vf) || !is_finite(vg)) return kInf;
    return 0.5 * vf + 0.5 * vg;
}

}  // namespace

// ---------------------------------------------------------------------------
// Step size selection
// ---------------------------------------------------------------------------

double delta_mix(double modulus_f_at_x, double modulus_g_at_x, int x) {
    if (!is_finite(modulus_f_at_x) || !is_finite(modulus_g_at_x)) throw InfiniteModulus(x);
    return 0.5 * modulus_f_at_x + 0.5 * modulus_g_at_x;
}

double delta_mix(const ModulusProfile& profile_f, const ModulusProfile& profile_g, int x) {
    if (x < 0 || x >= profile_g.size()) throw DomainError(x, "point outside the profile");
    return delta_mix(profile_f.values[x], profile_g.values[x], x);
}

// ---------------------------------------------------------------------------
// Descent traces
// ---------------------------------------------------------------------------

std::string to_string(DescentTerminal t) {
    switch (t) {
        case DescentTerminal::reached_critical: return "reached_critical";
        case DescentTerminal::monotonicity_broken: return "monotonicity_broken";
        case DescentTerminal::budget_exhausted: return "budget_exhausted";
    }
    return "unknown";
}

json DescentTrace::to_json() const {
    json steps = json::array();
    for (const DescentEntry& e : entries) {
        steps.push_back(json{{"point", e.point},
                             {"g", encode_extended(e.g_value)},
                             {"f", encode_extended(e.f_value)},
                             {"delta", encode_extended(e.delta)},
                             {"step_distance", e.step_distance},
                             {"running_sum", e.running_sum}});
    }
    return json{{"terminal", to_string(terminal)},
                {"terminal_point", terminal_point},
                {"terminal_g", encode_extended(terminal_g)},
                {"terminal_f", encode_extended(terminal_f)},
                {"terminal_delta", encode_extended(terminal_delta)},
                {"rho", rho},
                {"shift", shift},
                {"length_bound", length_bound},
                {"budget", budget},
                {"total_length", total_length()},
                {"note", note},
                {"entries", steps}};
}

std::string DescentTrace::to_csv() const {
    std::ostringstream out;
    out << "step,point,g,f,delta,step_distance,running_sum\n";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const DescentEntry& e = entries[i];
        out << i << ',' << e.point << ',' << csv_number(e.g_value) << ','
            << csv_number(e.f_value) << ',' << csv_number(e.delta) << ','
            << csv_number(e.step_distance) << ',' << csv_number(e.running_sum) << '\n';
    }
    out << entries.size() << ',' << terminal_point << ',' << csv_number(terminal_g) << ','
        << csv_number(terminal_f) << ',' << csv_number(terminal_delta) << ','
        << csv_number(0.0) << ',' << csv_number(total_length()) << '\n';
    return out.str();
}

int descent_step(const ExtendedFunction& f, const ExtendedFunction& g, const ModulusOperator& op,
                 int x, double rho) {
    if (x < 0 || x >= g.size() || !g.in_domain(x))
        throw DomainError(x, "descent must start inside dom g");
    const double vg = op.apply(g).values[x];
    if (vg == 0.0) throw CriticalPoint(x);
    const double vf = op.apply(f).values[x];
    const double delta = delta_mix(vf, vg, x);
    return find_compat_witness(vf, vg, rho, Theta::identity(), f, g, x, delta).z;
}

DescentTrace descent_run(const ExtendedFunction& f, const ExtendedFunction& g,
                         const ModulusOperator& op, int x0, double rho, long budget) {
    if (!f.space()->same_as(*g.space()))
        throw SpaceMismatch("descent needs f and g on the same space");
    if (x0 < 0 || x0 >= g.size() || !g.in_domain(x0))
        throw DomainError(x0, "descent must start inside dom g");
    if (!(rho > 0.0)) throw PreconditionError("descent requires rho > 0");

    if (budget <= 0)
        budget = g.space()->kind() == SpaceKind::finite ? 10L * g.size() : 10000L;

    // Normalize so inf g = 1; the profiles and both witness clauses are
    // translation invariant, so the trace geometry is unchanged.
    const double shift = 1.0 - g.finite_min();
    const ExtendedFunction gs = g.shifted(shift);
    const ExtendedFunction fs = f.shifted(shift);

    const ModulusProfile profile_f = op.apply(fs);
    const ModulusProfile profile_g = op.apply(gs);

    DescentTrace trace;
    trace.rho = rho;
    trace.shift = shift;
    trace.budget = budget;
    trace.length_bound = 2.0 * (gs.value(x0) - gs.finite_min());

    int x = x0;
    double running = 0.0;
    while (true) {
        const double vg = profile_g.values[x];
        if (vg == 0.0) {
            trace.terminal = DescentTerminal::reached_critical;
            break;
        }
        if (static_cast<long>(trace.entries.size()) >= budget) {
            trace.terminal = DescentTerminal::budget_exhausted;
            break;
        }
        const double vf = profile_f.values[x];
        int z = -1;
        double delta = kInf;
        try {
            delta = delta_mix(vf, vg, x);
            z = find_compat_witness(vf, vg, rho, Theta::identity(), fs, gs, x, delta).z;
        } catch (const InfiniteModulus& e) {
            trace.terminal = DescentTerminal::monotonicity_broken;
            trace.note = e.code();
            break;
        } catch (const PreconditionError& e) {
            trace.terminal = DescentTerminal::monotonicity_broken;
            trace.note = e.code();
            break;
        } catch (const NoWitness& e) {
            trace.terminal = DescentTerminal::monotonicity_broken;
            trace.note = e.code();
            break;
        }
        const double dist = gs.space()->distance(x, z);
        running += vg * dist;
        trace.entries.push_back(DescentEntry{x, gs.value(x), fs.value(x), delta, dist, running});
        x = z;
    }

    trace.terminal_point = x;
    trace.terminal_g = gs.value(x);
    trace.terminal_f = fs.value(x);
    trace.terminal_delta = mix_or_inf(profile_f.values[x], profile_g.values[x]);

    if (auto violation = verify_trace(trace, fs, gs, op)) {
        trace.terminal = DescentTerminal::monotonicity_broken;
        trace.note = "invariant violated: " + violation->dump();
    }
    return trace;
}

std::optional<json> verify_trace(const DescentTrace& trace, const ExtendedFunction& f,
                                 const ExtendedFunction& g, const ModulusOperator& op) {
    const ModulusProfile profile_g = op.apply(g);
    const MetricSpace& space = *g.space();

    // Walk the visited points: every entry plus the terminal point.
    std::vector<int> points;
    points.reserve(trace.entries.size() + 1);
    for (const DescentEntry& e : trace.entries) points.push_back(e.point);
    points.push_back(trace.terminal_point);

    double running = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const DescentEntry& e = trace.entries[i];
        const int a = points[i];
        const int b = points[i + 1];
        const double ga = g.value(a);
        const double gb = g.value(b);
        const double dist = space.distance(a, b);

        if (e.g_value != ga || e.f_value != f.value(a) || e.step_distance != dist)
            return json{{"invariant", "entry_consistency"}, {"step", i}};

        // 1. Strict g-decrease metered by the threshold.
        const double drop = e.delta * dist;
        if (!(drop > 0.0) || !(drop < ga - gb))
            return json{{"invariant", "g_decrease"},
                        {"step", i},
                        {"delta_times_distance", drop},
                        {"g_gap", ga - gb}};

        // 2. f - (1+rho) g nondecreasing, in the gap form certified per step.
        const double f_gap = positive_gap(f.value(a), f.value(b));
        const double g_gap = positive_gap(ga, gb);
        if (!(f_gap < (1.0 + trace.rho) * g_gap))
            return json{{"invariant", "f_minus_rho_g"},
                        {"step", i},
                        {"f_gap", encode_extended(f_gap)},
                        {"g_gap", g_gap}};

        // 3. Running length matches and stays under the telescoped bound.
        running += profile_g.values[a] * dist;
        if (running != e.running_sum)
            return json{{"invariant", "running_sum"}, {"step", i}};
    }
    if (!(trace.total_length() <= trace.length_bound))
        return json{{"invariant", "length_bound"},
                    {"total_length", trace.total_length()},
                    {"length_bound", trace.length_bound}};
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Sequence analysis
// ---------------------------------------------------------------------------

std::vector<int> monotone_subsequence(const std::vector<double>& values) {
    if (values.empty()) throw PreconditionError("monotone subsequence of an empty sequence");
    std::vector<int> picked{0};
    for (int m = 1; m < static_cast<int>(values.size()); ++m) {
        if (values[m] < values[picked.back()]) picked.push_back(m);
    }
    return picked;
}

json SequenceReport::to_json() const {
    json moduli = json::array();
    for (double v : modulus_values) moduli.push_back(encode_extended(v));
    return json{{"modulus_values", moduli},
                {"gaps", gaps},
                {"partial_sums", partial_sums},
                {"tail_increment", tail_increment},
                {"tail_min_gap", encode_extended(tail_min_gap)},
                {"gap_threshold", gap_threshold},
                {"liminf_estimate", liminf_estimate},
                {"tail_tol", tail_tol},
                {"liminf_tol", liminf_tol},
                {"summability_ok", summability_ok},
                {"divergence_ok", divergence_ok},
                {"liminf_zero", liminf_zero}};
}

std::string SequenceReport::to_csv() const {
    std::ostringstream out;
    out << "index,modulus,gap_to_next,partial_sum\n";
    for (std::size_t i = 0; i < modulus_values.size(); ++i) {
        out << i << ',' << csv_number(modulus_values[i]) << ',';
        if (i < gaps.size()) out << csv_number(gaps[i]);
        out << ',' << csv_number(partial_sums[i]) << '\n';
    }
    return out.str();
}

SequenceReport analyze_sequence(const std::vector<double>& modulus_values,
                                const std::function<double(int, int)>& distance,
                                double gap_threshold, double tail_tol, double liminf_tol) {
    const int n = static_cast<int>(modulus_values.size());
    if (n < 2) throw PreconditionError("sequence analysis needs at least two points");
    for (int i = 0; i < n; ++i) {
        if (!(modulus_values[i] > 0.0)) throw CriticalMember(i);
        if (!is_finite(modulus_values[i]))
            throw PreconditionError("sequence analysis needs finite modulus values");
    }

    SequenceReport report;
    report.modulus_values = modulus_values;
    report.tail_tol = tail_tol;
    report.liminf_tol = liminf_tol;

    report.gaps.resize(n - 1);
    report.partial_sums.resize(n);
    report.partial_sums[0] = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        const double gap = distance(i, i + 1);
        if (!(gap >= 0.0) || !is_finite(gap))
            throw PreconditionError("sequence analysis needs finite nonnegative gaps");
        report.gaps[i] = gap;
        report.partial_sums[i + 1] = report.partial_sums[i] + modulus_values[i] * gap;
    }

    // Summability: the last half of the terms contributes nothing measurable.
    const int mid = (n - 1) / 2;
    report.tail_increment = report.partial_sums[n - 1] - report.partial_sums[mid];
    report.summability_ok = report.tail_increment <= tail_tol;

    // Separation threshold: half the smallest consecutive gap in the first
    // quarter, unless the caller pinned one.
    if (gap_threshold >= 0.0) {
        report.gap_threshold = gap_threshold;
    } else {
        const int quarter = std::max(2, n / 4);
        double head_min = kInf;
        for (int i = 0; i + 1 < quarter && i < n - 1; ++i)
            head_min = std::min(head_min, report.gaps[i]);
        report.gap_threshold = is_finite(head_min) ? 0.5 * head_min : 0.0;
    }

    // Divergence: tail points stay pairwise separated.
    const int tail_start = n / 2;
    double tail_min = kInf;
    for (int i = tail_start; i < n; ++i)
        for (int j = i + 1; j < n; ++j) tail_min = std::min(tail_min, distance(i, j));
    report.tail_min_gap = tail_min;
    report.divergence_ok = tail_min > 0.0 && tail_min >= report.gap_threshold;

    report.liminf_estimate = *std::min_element(modulus_values.begin(), modulus_values.end());
    report.liminf_zero = report.liminf_estimate <= liminf_tol;
    return report;
}

SequenceReport asymptotic_criticality_report(const std::vector<int>& seq, const ExtendedFunction& g,
                                             const ModulusOperator& op, double gap_threshold,
                                             double tail_tol, double liminf_tol) {
    const ModulusProfile profile = op.apply(g);
    std::vector<double> values;
    values.reserve(seq.size());
    for (int p : seq) {
        if (!g.in_domain(p)) throw DomainError(p, "sequence leaves dom g");
        values.push_back(profile.values[p]);
    }
    const SpacePtr space = g.space();
    return analyze_sequence(
        values, [&seq, space](int i, int j) { return space->distance(seq[i], seq[j]); },
        gap_threshold, tail_tol, liminf_tol);
}

SequenceReport asymptotic_criticality_report_line(const std::vector<double>& coords,
                                                  const std::vector<double>& modulus_values,
                                                  double gap_threshold, double tail_tol,
                                                  double liminf_tol) {
    if (coords.size() != modulus_values.size())
        throw PreconditionError("coordinates and modulus values must align");
    return analyze_sequence(
        modulus_values,
        [&coords](int i, int j) { return std::abs(coords[i] - coords[j]); }, gap_threshold,
        tail_tol, liminf_tol);
}

// ---------------------------------------------------------------------------
// Cauchy and infimizing diagnostics
// ---------------------------------------------------------------------------

json CauchyReport::to_json() const {
    return json{{"delta", delta},
                {"start_index", start_index},
                {"checked_pairs", checked_pairs},
                {"min_slack", min_slack},
                {"holds", holds}};
}

CauchyReport cauchy_check(const std::vector<double>& modulus_values,
                          const std::function<double(int, int)>& distance, double delta) {
    if (!(delta > 0.0)) throw PreconditionError("cauchy check requires delta > 0");
    const int n = static_cast<int>(modulus_values.size());
    if (n < 2) throw PreconditionError("cauchy check needs at least two points");

    std::vector<double> sums(n, 0.0);
    for (int i = 0; i + 1 < n; ++i)
        sums[i + 1] = sums[i] + modulus_values[i] * distance(i, i + 1);

    // The modulus must stay above delta on the tail of the prefix.
    double tail_liminf = kInf;
    for (int i = n / 2; i < n; ++i) tail_liminf = std::min(tail_liminf, modulus_values[i]);
    if (tail_liminf < delta)
        throw PreconditionError("liminf estimate of the modulus sits below delta");

    // The partial sums must have flattened: the tail half of the increments is
    // dominated by the head half.
    const int mid = (n - 1) / 2;
    const double head_increment = sums[mid] - sums[0];
    const double tail_increment = sums[n - 1] - sums[mid];
    const bool flattened =
        tail_increment < 0.5 * head_increment || (head_increment == 0.0 && tail_increment == 0.0);
    if (!flattened) throw PreconditionError("partial sums keep growing; summability fails");

    // First index from which every modulus value clears delta.
    int start = n - 1;
    while (start > 0 && modulus_values[start - 1] >= delta) --start;

    CauchyReport report;
    report.delta = delta;
    report.start_index = start;
    report.min_slack = kInf;
    report.holds = true;
    for (int a = start; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const double window = sums[b] - sums[a];
            const double slack = window / delta - distance(a, b);
            report.min_slack = std::min(report.min_slack, slack);
            ++report.checked_pairs;
        }
    }
    if (report.checked_pairs == 0) report.min_slack = 0.0;
    report.holds = report.min_slack >= 0.0;
    return report;
}

CauchyReport cauchy_check(const std::vector<int>& seq, const ExtendedFunction& g,
                          const ModulusOperator& op, double delta) {
    const ModulusProfile profile = op.apply(g);
    std::vector<double> values;
    values.reserve(seq.size());
    for (int p : seq) {
        if (!g.in_domain(p)) throw DomainError(p, "sequence leaves dom g");
        values.push_back(profile.values[p]);
    }
    const SpacePtr space = g.space();
    return cauchy_check(values,
                        [&seq, space](int i, int j) { return space->distance(seq[i], seq[j]); },
                        delta);
}

json InfimizingReport::to_json() const {
    return json{{"liminf_estimate", liminf_estimate},
                {"inf_value", inf_value},
                {"gap", gap},
                {"tol", tol},
                {"holds", holds},
                {"subsequence", subsequence},
                {"internal_bound_ok", internal_bound_ok},
                {"bound_checks", bound_checks}};
}

InfimizingReport infimizing_check(const std::vector<int>& seq, const ExtendedFunction& f,
                                  double tol, std::vector<int> u_samples) {
    if (seq.empty()) throw PreconditionError("infimizing check needs a non-empty sequence");
    const ModulusProfile slope = global_slope(f);
    std::vector<double> slope_values;
    slope_values.reserve(seq.size());
    for (int p : seq) {
        if (!f.in_domain(p)) throw DomainError(p, "sequence leaves dom f");
        slope_values.push_back(slope.values[p]);
    }
    if (u_samples.empty()) u_samples = f.domain();

    InfimizingReport report;
    report.tol = tol;
    report.inf_value = f.finite_min();
    report.liminf_estimate = kInf;
    for (int p : seq) report.liminf_estimate = std::min(report.liminf_estimate, f.value(p));
    report.gap = report.liminf_estimate - report.inf_value;
    report.holds = report.gap <= tol;

    // Replay f(z_k) <= f(u) + G[f](z_k) d(z_k, u) in quotient form: the
    // quotient toward u is one of the candidates inside the global slope max,
    // so a conforming slope satisfies this bit-exactly.
    report.subsequence = monotone_subsequence(slope_values);
    report.internal_bound_ok = true;
    const MetricSpace& space = *f.space();
    for (int k : report.subsequence) {
        const int z = seq[k];
        for (int u : u_samples) {
            if (u == z || !f.in_domain(u)) continue;
            const double quotient = positive_gap(f.value(z), f.value(u)) / space.distance(z, u);
            ++report.bound_checks;
            if (!(quotient <= slope_values[k])) report.internal_bound_ok = false;
        }
    }
    return report;
}

InfimizingReport infimizing_check_line(const std::vector<double>& coords,
                                       const std::function<double(double)>& f, double inf_hint,
                                       double tol, const std::vector<double>& u_samples) {
    if (coords.empty()) throw PreconditionError("infimizing check needs a non-empty sequence");

    // Sampled global slope: max positive-part quotient over every sequence
    // point and every u sample.
    std::vector<double> candidates = coords;
    candidates.insert(candidates.end(), u_samples.begin(), u_samples.end());
    auto sampled_slope = [&](double z) {
        double best = 0.0;
        for (double c : candidates) {
            const double d = std::abs(z - c);
            if (d == 0.0) continue;
            best = std::max(best, positive_gap(f(z), f(c)) / d);
        }
        return best;
    };

    std::vector<double> slope_values;
    slope_values.reserve(coords.size());
    for (double z : coords) slope_values.push_back(sampled_slope(z));

    InfimizingReport report;
    report.tol = tol;
    report.inf_value = inf_hint;
    report.liminf_estimate = kInf;
    for (double z : coords) report.liminf_estimate = std::min(report.liminf_estimate, f(z));
    report.gap = report.liminf_estimate - report.inf_value;
    report.holds = report.gap <= tol;

    report.subsequence = monotone_subsequence(slope_values);
    report.internal_bound_ok = true;
    for (int k : report.subsequence) {
        const double z = coords[k];
        for (double u : u_samples) {
            const double d = std::abs(z - u);
            if (d == 0.0) continue;
            const double quotient = positive_gap(f(z), f(u)) / d;
            ++report.bound_checks;
            if (!(quotient <= slope_values[k])) report.internal_bound_ok = false;
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Exhaustive determination sweep
// ---------------------------------------------------------------------------

json DeterminationReport::to_json() const {
    return json{{"functions", functions},
                {"classes", classes},
                {"determined", determined},
                {"collision", collision}};
}

namespace {

std::vector<double> decode_assignment(long index, int points, const std::vector<double>& grid) {
    std::vector<double> values(points);
    for (int i = 0; i < points; ++i) {
        values[i] = grid[index % static_cast<long>(grid.size())];
        index /= static_cast<long>(grid.size());
    }
    return values;
}

std::string profile_key(const ModulusProfile& profile, double min_value) {
    std::string key((profile.values.size() + 1) * sizeof(double), '\0');
    std::memcpy(key.data(), profile.values.data(), profile.values.size() * sizeof(double));
    std::memcpy(key.data() + profile.values.size() * sizeof(double), &min_value, sizeof(double));
    return key;
}

}  // namespace

DeterminationReport determination_oracle(const SpacePtr& space,
                                         const std::vector<double>& value_grid) {
    const int n = space->size();
    if (n < 1 || n > 6)
        throw PreconditionError("determination sweep only covers spaces with 1..6 points");
    if (value_grid.empty()) throw PreconditionError("determination sweep needs grid values");
    for (double v : value_grid)
        if (!is_finite(v)) throw PreconditionError("determination sweep needs finite grid values");

    double projected = 1.0;
    for (int i = 0; i < n; ++i) projected *= static_cast<double>(value_grid.size());
    if (projected > 1e7)
        throw BudgetExceeded("value grid would enumerate " + std::to_string(projected) +
                             " functions");
    const long total = static_cast<long>(projected);

    DeterminationReport report;
    report.functions = total;
    std::unordered_map<std::string, long> first_seen;
    first_seen.reserve(static_cast<std::size_t>(total) * 2);

    for (long idx = 0; idx < total; ++idx) {
        const std::vector<double> values = decode_assignment(idx, n, value_grid);
        const ExtendedFunction f(space, values);
        const std::string key = profile_key(global_slope(f), f.finite_min());
        auto [it, inserted] = first_seen.emplace(key, idx);
        if (!inserted && report.collision.empty()) {
            report.collision = json{{"first", decode_assignment(it->second, n, value_grid)},
                                    {"second", values}};
        }
    }
    report.classes = static_cast<long>(first_seen.size());
    report.determined = report.classes == report.functions;
    return report;
}

// ---------------------------------------------------------------------------
// Comparison and existence
// ---------------------------------------------------------------------------

json ComparisonReport::to_json() const {
    return json{{"domination_ok", domination_ok},
                {"critical_set_ok", critical_set_ok},
                {"hypotheses_hold", hypotheses_hold},
                {"conclusion_observed", conclusion_observed},
                {"details", details}};
}

ComparisonReport comparison_check(const ExtendedFunction& f, const ExtendedFunction& g,
                                  const ModulusOperator& op, double rho, double tol) {
    if (!f.space()->same_as(*g.space()))
        throw SpaceMismatch("comparison needs f and g on the same space");
    const ModulusProfile profile_f = op.apply(f);
    const ModulusProfile profile_g = op.apply(g);

    ComparisonReport report;
    report.domination_ok = true;
    report.critical_set_ok = true;
    report.conclusion_observed = true;
    report.details = json{{"rho", rho}, {"tol", tol}};

    for (int x = 0; x < g.size(); ++x) {
        if (!g.in_domain(x)) continue;
        const bool critical = profile_g.values[x] <= tol;
        if (critical) {
            if (f.value(x) > g.value(x) && report.critical_set_ok) {
                report.critical_set_ok = false;
                report.details["critical_set_violation"] =
                    json{{"point", x},
                         {"f", encode_extended(f.value(x))},
                         {"g", encode_extended(g.value(x))}};
            }
        } else {
            if (!(profile_f.values[x] < profile_g.values[x]) && report.domination_ok) {
                report.domination_ok = false;
                report.details["domination_violation"] =
                    json{{"point", x},
                         {"modulus_f", encode_extended(profile_f.values[x])},
                         {"modulus_g", encode_extended(profile_g.values[x])}};
            }
        }
        if (f.value(x) > g.value(x) && report.conclusion_observed) {
            report.conclusion_observed = false;
            report.details["conclusion_violation"] = json{{"point", x},
                                                          {"f", encode_extended(f.value(x))},
                                                          {"g", encode_extended(g.value(x))}};
        }
    }
    report.hypotheses_hold = report.domination_ok && report.critical_set_ok;
    return report;
}

json ExistenceReport::to_json() const {
    return json{{"verdict", verdict},
                {"critical_points", critical_points},
                {"sequence", sequence},
                {"sequence_report", sequence_report}};
}

ExistenceReport critical_existence(const ExtendedFunction& f, const ModulusOperator& op,
                                   long seq_prefix_budget, double tol) {
    const ModulusProfile profile = op.apply(f);

    ExistenceReport report;
    for (int x = 0; x < f.size(); ++x) {
        if (f.in_domain(x) && profile.values[x] <= tol) report.critical_points.push_back(x);
    }
    if (!report.critical_points.empty()) {
        report.verdict = "found_critical";
        return report;
    }

    // No near-zero of the profile: extract a strictly-decreasing-profile
    // subsequence and audit it for asymptotic criticality.
    std::vector<int> domain = f.domain();
    std::vector<double> slope_values;
    slope_values.reserve(domain.size());
    for (int p : domain) slope_values.push_back(profile.values[p]);
    std::vector<int> picks = monotone_subsequence(slope_values);
    if (static_cast<long>(picks.size()) > seq_prefix_budget)
        picks.resize(static_cast<std::size_t>(seq_prefix_budget));
    for (int k : picks) report.sequence.push_back(domain[static_cast<std::size_t>(k)]);

    if (report.sequence.size() < 4) {
        report.verdict = "inconclusive";
        return report;
    }
    const SequenceReport sequence_report = asymptotic_criticality_report(report.sequence, f, op);
    report.sequence_report = sequence_report.to_json();
    report.verdict = sequence_report.all_flags() ? "found_asymptotic" : "inconclusive";
    return report;
}

}  // namespace slopelab
