#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "slopelab/extended_function.hpp"
#include "slopelab/extended_real.hpp"
#include "slopelab/metric_space.hpp"

namespace slopelab {

// Deterministic instance generator for property suites. All draws go through
// mt19937_64 with explicit bit manipulation (never std::uniform_*_distribution,
// whose output is implementation-defined), so a seed pins the same instances on
// every platform. Function values and weights live on dyadic lattices: shifts
// and power-of-two scalings of them are exact in double arithmetic, which lets
// invariance checks demand bitwise equality instead of tolerances.
class InstanceGen {
public:
    explicit InstanceGen(std::uint64_t seed) : rng_(seed) {}

    // Uniform in [0, 1) with 53-bit resolution.
    double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    // Uniform on the lattice {k * 2^-20 : 0 <= k <= 2^20} in [0, 1].
    double dyadic() { return static_cast<double>(rng_() % ((1u << 20) + 1)) * 0x1.0p-20; }

    // Uniform integer in [lo, hi], inclusive.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    bool coin(double p) { return unit() < p; }

    // Random metric space: symmetric dyadic weights in [2^-4, 1 + 2^-4],
    // repaired to a metric by min-plus closure. Weights bounded away from zero
    // keep the closure collision-free.
    SpacePtr finite_space(int n) {
        std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) w[i][j] = w[j][i] = 0.0625 + dyadic();
        return metric_repair(w);
    }

    // Proper function with dyadic values in [0, 1]; each point is sent to +inf
    // with probability inf_fraction (at least one finite value is kept).
    ExtendedFunction function_on(SpacePtr space, double inf_fraction = 0.0) {
        const int n = space->size();
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = coin(inf_fraction) ? kInf : dyadic();
        bool proper = false;
        for (double x : v) proper |= is_finite(x);
        if (!proper) v[0] = dyadic();
        return ExtendedFunction(std::move(space), std::move(v));
    }

    // Strictly positive dyadic weights in [2^-20, 1 + 2^-20].
    Measure weights_on(SpacePtr space) {
        const int n = space->size();
        std::vector<double> w(n);
        for (int i = 0; i < n; ++i) w[i] = 0x1.0p-20 + dyadic();
        return Measure::weights(std::move(space), std::move(w));
    }

    std::mt19937_64& raw() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace slopelab
