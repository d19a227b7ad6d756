#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace slopelab {

// Extended reals are doubles where +infinity is the IEEE infinity used as an
// explicit sentinel (validation rejects NaN and -infinity; finite overflow is
// never used to mean "infinite"). The conventions below implement the
// positive-part arithmetic: a - (+inf) = -inf and {-inf}^+ = 0, so descent
// quotients against +inf-valued targets vanish.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_finite(double v) noexcept { return std::isfinite(v); }

// {v}^+ with the extended-real convention: maps -inf (and every v <= 0) to 0.
inline double pos_part(double v) noexcept { return v > 0.0 ? v : 0.0; }

// A value is admissible as an extended-real function value iff it is finite or
// exactly +inf.
inline bool is_extended_value(double v) noexcept { return std::isfinite(v) || v == kInf; }

// Deterministic fixed-order pairwise (cascade) summation. Used for every
// quadrature and weighted sum so results are bit-stable regardless of how work
// is split across threads.
inline double pairwise_sum(const double* data, std::size_t n) {
    if (n <= 8) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += data[i];
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

}  // namespace slopelab
