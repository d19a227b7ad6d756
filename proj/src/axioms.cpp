#include "slopelab/axioms.hpp"

#include <algorithm>
#include <cmath>

#include "slopelab/errors.hpp"
#include "slopelab/extended_real.hpp"
#include "slopelab/random_instances.hpp"

namespace slopelab {

json AxiomReport::to_json() const {
    json j;
    j["axiom"] = axiom;
    j["verdict"] = holds ? "holds" : "fails";
    j["witness"] = witness;
    j["trials"] = trials;
    if (!note.empty()) j["note"] = note;
    return j;
}

json CompatWitness::to_json() const {
    return json{{"z", z}, {"g_gap", g_gap}, {"f_gap", f_gap}, {"ratio", ratio}};
}

namespace {

AxiomReport make_report(std::string axiom, bool holds, json witness = json::object(),
                        std::string note = "") {
    AxiomReport r;
    r.axiom = std::move(axiom);
    r.holds = holds;
    r.witness = std::move(witness);
    r.note = std::move(note);
    return r;
}

double positive_gap(double from, double to) { return pos_part(from - to); }

}  // namespace

AxiomReport check_D0(const ModulusOperator& op, const ExtendedFunction& f) {
    const ModulusProfile T = op.apply(f);
    for (int i = 0; i < T.size(); ++i) {
        if (is_finite(T.values[i]) && !f.in_domain(i)) {
            return make_report("D0", false,
                               json{{"point", i}, {"modulus", T.values[i]}, {"f", "inf"}});
        }
    }
    return make_report("D0", true);
}

AxiomReport check_D1(const ModulusOperator& op, const ExtendedFunction& f, double tol) {
    const ModulusProfile T = op.apply(f);
    const double min = f.finite_min();
    for (int i = 0; i < T.size(); ++i) {
        if (!f.in_domain(i) || f.value(i) != min) continue;
        if (!(T.values[i] <= tol)) {
            return make_report(
                "D1", false,
                json{{"point", i}, {"modulus", encode_extended(T.values[i])}, {"min", min}, {"tol", tol}});
        }
    }
    return make_report("D1", true);
}

AxiomReport check_D2(const ModulusOperator& op, const ExtendedFunction& f, const ExtendedFunction& g,
                     int x) {
    if (!g.in_domain(x)) throw PreconditionError("check_D2: x must lie in dom g");
    // Domination premise, verified exhaustively over dom g.
    for (int z = 0; z < g.size(); ++z) {
        if (!g.in_domain(z)) continue;
        const double g_gap = positive_gap(g.value(x), g.value(z));
        const double f_gap = positive_gap(f.value(x), f.value(z));
        if (!(g_gap <= f_gap)) {
            return make_report("D2", true,
                               json{{"premise_broken_at", z}, {"g_gap", encode_extended(g_gap)},
                                    {"f_gap", encode_extended(f_gap)}},
                               "vacuous premise");
        }
    }
    const double Tg = op.apply(g).values[x];
    const double Tf = op.apply(f).values[x];
    if (Tg <= Tf) return make_report("D2", true);
    return make_report("D2", false,
                       json{{"x", x}, {"T_g", encode_extended(Tg)}, {"T_f", encode_extended(Tf)}});
}

AxiomReport check_D3(const ModulusOperator& op, const ExtendedFunction& f, int x, double r) {
    if (!(r > 1.0)) throw PreconditionError("check_D3: r must exceed 1");
    const double base = op.apply(f).values[x];
    if (!(base > 0.0) || !is_finite(base))
        return make_report("D3", true, json::object(), "vacuous: modulus not in (0, inf)");
    const double scaled = op.apply(f.scaled(r)).values[x];
    if (scaled > base) return make_report("D3", true);
    return make_report("D3", false,
                       json{{"x", x},
                            {"r", r},
                            {"modulus", encode_extended(base)},
                            {"scaled_modulus", encode_extended(scaled)}});
}

AxiomReport check_translation(const ModulusOperator& op, const ExtendedFunction& f, double c) {
    if (!is_finite(c)) throw PreconditionError("check_translation: c must be finite");
    const ModulusProfile base = op.apply(f);
    const ModulusProfile shifted = op.apply(f.shifted(c));
    for (int i = 0; i < base.size(); ++i) {
        if (base.values[i] == shifted.values[i]) continue;
        return make_report("translation", false,
                           json{{"point", i},
                                {"c", c},
                                {"modulus", encode_extended(base.values[i])},
                                {"shifted_modulus", encode_extended(shifted.values[i])}});
    }
    return make_report("translation", true);
}

namespace {

void require_delta_sandwich(const ModulusOperator& op, const ExtendedFunction& f,
                            const ExtendedFunction& g, int x, double delta, double& vf, double& vg) {
    vf = op.apply(f).values[x];
    vg = op.apply(g).values[x];
    if (!(vf < delta && delta < vg))
        throw PreconditionError("compatibility checks require T[f](x) < delta < T[g](x)");
}

}  // namespace

AxiomReport check_strong_compat(const ModulusOperator& op, const Theta& theta,
                                const ExtendedFunction& f, const ExtendedFunction& g, int x,
                                double delta, CompatWitness* out) {
    double vf = 0.0, vg = 0.0;
    require_delta_sandwich(op, f, g, x, delta, vf, vg);
    const double th = theta(delta);
    const int n = g.size();
    const MetricSpace& space = *g.space();

    int best = -1;
    double best_gap = -1.0;
    json near_misses = json::array();
    for (int z = 0; z < n; ++z) {
        if (z == x || !g.in_domain(z)) continue;
        const double qf = delta_plus(f, x, z);
        const double qg = delta_plus(g, x, z);
        if (qf < th && th < qg) {
            const double gap = positive_gap(g.value(x), g.value(z));
            if (gap > best_gap) {
                best_gap = gap;
                best = z;
            }
        } else if (th < qg && near_misses.size() < 16) {
            // Candidate whose g-quotient clears the bar but whose f-quotient
            // does not stay below it: the data that defeats the sandwich.
            near_misses.push_back(json{{"z", z}, {"f_quotient", qf}, {"g_quotient", qg}});
        }
    }
    if (best >= 0) {
        CompatWitness w;
        w.z = best;
        w.g_gap = positive_gap(g.value(x), g.value(best));
        w.f_gap = positive_gap(f.value(x), f.value(best));
        w.ratio = (g.value(x) - g.value(best)) / space.distance(x, best);
        if (out) *out = w;
        return make_report("D2hat", true, json::object(), "witness z = " + std::to_string(best));
    }
    return make_report("D2hat", false,
                       json{{"x", x},
                            {"delta", delta},
                            {"theta_delta", th},
                            {"modulus_f", vf},
                            {"modulus_g", vg},
                            {"blocked_candidates", near_misses}});
}

namespace {

// Clause scan shared by the public search and the transfer checker: admissible
// z for the ratio clauses with gauge value th = theta_rho(delta).
std::vector<int> ratio_witness_set(double rho, double th, const ExtendedFunction& f,
                                   const ExtendedFunction& g, int x) {
    std::vector<int> out;
    const MetricSpace& space = *g.space();
    for (int z = 0; z < g.size(); ++z) {
        if (z == x || !g.in_domain(z)) continue;
        const double g_gap = positive_gap(g.value(x), g.value(z));
        const double f_gap = positive_gap(f.value(x), f.value(z));
        if (!(f_gap < (1.0 + rho) * g_gap)) continue;
        if (!(th * space.distance(x, z) < g.value(x) - g.value(z))) continue;
        out.push_back(z);
    }
    return out;
}

CompatWitness pick_witness(const std::vector<int>& admissible, const ExtendedFunction& f,
                           const ExtendedFunction& g, int x) {
    int best = -1;
    double best_gap = -1.0;
    for (int z : admissible) {
        const double gap = positive_gap(g.value(x), g.value(z));
        if (gap > best_gap) {  // strict: ties keep the smallest index
            best_gap = gap;
            best = z;
        }
    }
    CompatWitness w;
    w.z = best;
    w.g_gap = best_gap;
    w.f_gap = positive_gap(f.value(x), f.value(best));
    w.ratio = (g.value(x) - g.value(best)) / g.space()->distance(x, best);
    return w;
}

}  // namespace

CompatWitness find_compat_witness(double modulus_f_at_x, double modulus_g_at_x, double rho,
                                  const Theta& theta_rho, const ExtendedFunction& f,
                                  const ExtendedFunction& g, int x, double delta) {
    if (!(rho > 0.0)) throw PreconditionError("ratio compatibility requires rho > 0");
    if (!(modulus_f_at_x < delta && delta < modulus_g_at_x))
        throw PreconditionError("compatibility checks require T[f](x) < delta < T[g](x)");
    const std::vector<int> admissible = ratio_witness_set(rho, theta_rho(delta), f, g, x);
    if (admissible.empty())
        throw NoWitness("no point satisfies both ratio clauses at x = " + std::to_string(x));
    return pick_witness(admissible, f, g, x);
}

CompatWitness find_compat_witness(const ModulusOperator& op, double rho, const Theta& theta_rho,
                                  const ExtendedFunction& f, const ExtendedFunction& g, int x,
                                  double delta) {
    const double vf = op.apply(f).values[x];
    const double vg = op.apply(g).values[x];
    return find_compat_witness(vf, vg, rho, theta_rho, f, g, x, delta);
}

AxiomReport check_witness_transfer(const ModulusOperator& op, const Theta& phi, double rho,
                                   const Theta& theta_rho, const ExtendedFunction& f,
                                   const ExtendedFunction& g, int x, double delta) {
    if (!phi.valid()) throw PreconditionError("witness transfer requires an admissible gauge phi");
    const double vf = op.apply(f).values[x];
    const double vg = op.apply(g).values[x];
    const ModulusOperator composed = op.composed_with(phi);
    const double cf = composed.apply(f).values[x];
    const double cg = composed.apply(g).values[x];
    const double phi_delta = phi(delta);

    const bool pre_base = vf < delta && delta < vg;
    const bool pre_comp = cf < phi_delta && phi_delta < cg;

    const Theta transferred = Theta::compose(theta_rho, phi.inverted());
    const double th_base = theta_rho(delta);
    const double th_comp = transferred(phi_delta);

    const std::vector<int> base_set = ratio_witness_set(rho, th_base, f, g, x);
    const std::vector<int> comp_set = ratio_witness_set(rho, th_comp, f, g, x);

    const bool holds = pre_base == pre_comp && base_set == comp_set;
    if (holds) {
        AxiomReport r = make_report("composition", true);
        r.note = "witness set size " + std::to_string(base_set.size());
        return r;
    }
    return make_report("composition", false,
                       json{{"x", x},
                            {"delta", delta},
                            {"phi_delta", phi_delta},
                            {"precondition_base", pre_base},
                            {"precondition_composed", pre_comp},
                            {"gauge_base", th_base},
                            {"gauge_composed", th_comp},
                            {"witnesses_base", base_set},
                            {"witnesses_composed", comp_set}});
}

AxiomReport refute_strong_compat_average(double delta, const Theta& theta, double grid_step) {
    if (!(delta > 0.0)) throw PreconditionError("refutation requires delta > 0");
    if (!(grid_step > 0.0)) throw PreconditionError("refutation requires a positive grid step");
    const double th = theta(delta);
    const double t0 = 3.0 * delta / (5.0 * th);
    const double span = 4.0 * t0;

    // Node count: honor the requested step, but snap to an integral cell count
    // so the construction's kinks (multiples of t0) land on nodes whenever the
    // step divides t0.
    const double ratio = span / grid_step;
    long long cells = std::llround(ratio);
    if (std::abs(ratio - static_cast<double>(cells)) > 1e-6) cells = static_cast<long long>(std::ceil(ratio));
    if (cells < 8) cells = 8;
    const int nodes = static_cast<int>(cells) + 1;

    SpacePtr grid = MetricSpace::grid1d(0.0, span, nodes);
    const double psi_slope = 5.0 * th * th / (6.0 * delta);  // hits 0 at 3 t0
    const double phi_slope = 5.0 * th * th / (3.0 * delta);  // hits 0 at 2 t0
    auto psi = [&](double t) {
        if (t <= t0) return th;
        const double v = th - psi_slope * (t - t0);
        return v > 0.0 ? v : 0.0;
    };
    auto phi = [&](double t) {
        if (t <= t0) return th;
        const double v = th - phi_slope * (t - t0);
        return v > 0.0 ? v : 0.0;
    };

    std::vector<double> gv(nodes), fv(nodes);
    for (int i = 0; i < nodes; ++i) {
        const double t = grid->coord(i);
        gv[i] = -t * psi(t);
        fv[i] = -t * phi(t);
    }
    ExtendedFunction g(grid, std::move(gv));
    ExtendedFunction f(grid, std::move(fv));
    Measure leb = Measure::lebesgue(grid);

    const double m_g = average_descent_at(g, leb, 0);
    const double m_f = average_descent_at(f, leb, 0);
    const double target_g = 1.2 * delta;
    const double target_f = 0.9 * delta;
    const bool quadrature_ok = std::abs(m_g - target_g) <= 1e-6 * target_g &&
                               std::abs(m_f - target_f) <= 1e-6 * target_f;
    const bool sandwich_ok = m_f < delta && delta < m_g;

    // Sandwich scan over the nodes, on the defining profiles themselves.
    int sandwich_nodes = 0, weak_sandwich_nodes = 0;
    for (int i = 0; i < nodes; ++i) {
        const double t = grid->coord(i);
        const double p = phi(t), q = psi(t);
        if (p < th && th < q) ++sandwich_nodes;
        if (p < q && th <= q) ++weak_sandwich_nodes;
    }

    const bool witness_exists = sandwich_nodes > 0;
    json payload{{"delta", delta},
                 {"theta", theta.name()},
                 {"theta_delta", th},
                 {"t0", t0},
                 {"grid_nodes", nodes},
                 {"grid_step", grid->grid_step()},
                 {"average_g_at_origin", m_g},
                 {"average_f_at_origin", m_f},
                 {"expected_g", target_g},
                 {"expected_f", target_f},
                 {"quadrature_ok", quadrature_ok},
                 {"delta_sandwich_ok", sandwich_ok},
                 {"sandwich_nodes", sandwich_nodes},
                 {"weak_sandwich_nodes", weak_sandwich_nodes},
                 {"refutation_valid", quadrature_ok && sandwich_ok && !witness_exists &&
                                          weak_sandwich_nodes == 0}};
    return make_report("D2hat", witness_exists, std::move(payload),
                       "average modulus vs pointwise sandwich");
}

AxiomReport refute_compat_nat(int n_max, double rho, const std::vector<Theta>& theta_grid,
                              double delta) {
    if (n_max < 3) throw PreconditionError("refute_compat_nat requires n_max >= 3");
    if (!(rho > 0.0)) throw PreconditionError("refute_compat_nat requires rho > 0");
    if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError("refute_compat_nat requires delta in (0,1)");

    // Integer chain {1..n_max}: point index i represents the integer i+1.
    std::vector<std::vector<double>> chain(n_max, std::vector<double>(n_max, 0.0));
    std::vector<std::vector<double>> discrete(n_max, std::vector<double>(n_max, 0.0));
    for (int i = 0; i < n_max; ++i)
        for (int j = 0; j < n_max; ++j) {
            chain[i][j] = std::abs(i - j);
            discrete[i][j] = i == j ? 0.0 : 1.0;
        }
    SpacePtr chain_space = MetricSpace::finite(chain);
    SpacePtr discrete_space = MetricSpace::finite(discrete);

    auto indicator_complement = [&](int n, const SpacePtr& space) {
        // f_n(m) = 1 for m != n, 0 at m = n (integer n lives at index n-1).
        std::vector<double> v(n_max, 1.0);
        v[n - 1] = 0.0;
        return ExtendedFunction(space, std::move(v));
    };

    // T in the discrete metric: T[f](k) = sup_m {f(k) - f(m)}^+.
    auto T_at_one = [&](int n) {
        return global_slope(indicator_complement(n, discrete_space)).values[0];
    };

    bool exact_ok = T_at_one(1) == 0.0;
    for (int n = 2; n <= n_max && exact_ok; ++n) exact_ok = T_at_one(n) == 1.0;

    // Quotients in the chain metric are exactly 1/(n-1) from x = 1 to z = n.
    bool quotient_ok = true;
    for (int n = 2; n <= n_max && quotient_ok; ++n) {
        ExtendedFunction fn = indicator_complement(n, chain_space);
        quotient_ok = delta_plus(fn, 0, n - 1) == 1.0 / (static_cast<double>(n) - 1.0);
    }

    ExtendedFunction f1_chain = indicator_complement(1, chain_space);
    json per_theta = json::array();
    bool all_refuted = true;
    for (const Theta& theta : theta_grid) {
        const double th = theta(delta);
        int defeating_n = -1;
        for (int n = 2; n <= n_max; ++n) {
            if (th * (static_cast<double>(n) - 1.0) >= 1.0) {
                defeating_n = n;
                break;
            }
        }
        bool confirmed = false;
        if (defeating_n > 0) {
            ExtendedFunction fn_chain = indicator_complement(defeating_n, chain_space);
            try {
                find_compat_witness(T_at_one(1), T_at_one(defeating_n), rho, theta, f1_chain,
                                    fn_chain, 0, delta);
            } catch (const NoWitness&) {
                confirmed = true;
            }
        } else {
            all_refuted = false;
        }
        per_theta.push_back(json{{"theta", theta.name()},
                                 {"theta_delta", th},
                                 {"defeating_n", defeating_n},
                                 {"no_witness_confirmed", confirmed}});
        if (defeating_n > 0 && !confirmed) all_refuted = false;
    }

    json payload{{"n_max", n_max},
                 {"rho", rho},
                 {"delta", delta},
                 {"modulus_exact", exact_ok},
                 {"quotients_exact", quotient_ok},
                 {"gauges", per_theta},
                 {"all_refuted", all_refuted}};
    // verdict holds only if some tested gauge survived every n (compatibility
    // not refuted); the expected outcome is fails with all_refuted = true.
    return make_report("C", !all_refuted, std::move(payload),
                       "integer chain vs discrete-metric slope");
}

namespace {

ModulusOperator suite_operator(ModulusKind paradigm, const SpacePtr& space, InstanceGen& gen) {
    const double diam = space->diameter();
    switch (paradigm) {
        case ModulusKind::global: return ModulusOperator::global();
        case ModulusKind::local: return ModulusOperator::local({diam, diam * 0.5, diam * 0.25});
        case ModulusKind::average: return ModulusOperator::average(gen.weights_on(space));
        case ModulusKind::diffusion:
            return ModulusOperator::diffusion(gen.weights_on(space),
                                              {diam * 2.0, diam, diam * 0.5});
        default: throw PreconditionError("suite paradigms are the four base moduli");
    }
}

// Derived comparison function for the domination suite: built so the premise
// {g(x)-g(z)}^+ <= {f(x)-f(z)}^+ usually holds by construction, plus one
// arm of unrelated pairs to exercise the vacuous branch.
ExtendedFunction suite_partner(const ExtendedFunction& f, InstanceGen& gen) {
    switch (gen.uniform_int(0, 4)) {
        case 0: return f;
        case 1: return f.scaled(0.25 + 0.5 * gen.dyadic());
        case 2: {  // clamp from below: gaps can only shrink
            const double m = gen.dyadic();
            std::vector<double> v = f.values();
            for (double& x : v)
                if (is_finite(x)) x = std::max(x, m);
            return ExtendedFunction(f.space(), std::move(v));
        }
        case 3: {  // restrict to a random support containing the minimizer
            std::vector<int> keep;
            for (int i = 0; i < f.size(); ++i)
                if (gen.coin(0.5)) keep.push_back(i);
            keep.push_back(f.argmin());
            return truncate(f, PointSet(f.space(), std::move(keep)));
        }
        default: return gen.function_on(f.space());  // usually a vacuous premise
    }
}

}  // namespace

AxiomReport run_axiom_suite(const std::string& axiom, ModulusKind paradigm, std::uint64_t seed,
                            int trials, int max_points) {
    if (trials < 1) throw PreconditionError("suite needs at least one trial");
    if (max_points < 2) throw PreconditionError("suite spaces need at least two points");
    InstanceGen gen(seed);
    AxiomReport aggregate = make_report(axiom, true);
    aggregate.trials = trials;
    aggregate.note = to_string(paradigm) + " paradigm, seed " + std::to_string(seed);

    for (int trial = 0; trial < trials; ++trial) {
        SpacePtr space = gen.finite_space(gen.uniform_int(2, max_points));
        const ModulusOperator op = suite_operator(paradigm, space, gen);
        AxiomReport inner;
        if (axiom == "D0") {
            inner = check_D0(op, gen.function_on(space, 0.3));
        } else if (axiom == "D1") {
            inner = check_D1(op, gen.function_on(space, gen.coin(0.5) ? 0.25 : 0.0));
        } else if (axiom == "D2") {
            ExtendedFunction f = gen.function_on(space, gen.coin(0.25) ? 0.2 : 0.0);
            ExtendedFunction g = suite_partner(f, gen);
            const std::vector<int> dom = g.domain();
            const int x = dom[static_cast<std::size_t>(gen.uniform_int(0, static_cast<int>(dom.size()) - 1))];
            inner = check_D2(op, f, g, x);
        } else if (axiom == "D3") {
            ExtendedFunction f = gen.function_on(space, gen.coin(0.25) ? 0.2 : 0.0);
            const std::vector<int> dom = f.domain();
            const int x = dom[static_cast<std::size_t>(gen.uniform_int(0, static_cast<int>(dom.size()) - 1))];
            inner = check_D3(op, f, x, 1.25 + 1.75 * gen.unit());
        } else if (axiom == "translation") {
            inner = check_translation(op, gen.function_on(space, gen.coin(0.25) ? 0.2 : 0.0),
                                      gen.dyadic() - 0.5);
        } else {
            throw PreconditionError("unknown suite axiom: " + axiom);
        }
        if (!inner.holds) {
            aggregate.holds = false;
            aggregate.witness = json{{"trial", trial}, {"report", inner.to_json()}};
            break;
        }
    }
    return aggregate;
}

}  // namespace slopelab
