#pragma once

// Small shared utilities: extended integrability indices in [1, ∞] and a few
// numeric helpers used across modules.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "leaderscope/errors.hpp"

namespace leaderscope {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Extended index q ∈ [1, ∞]: ∞ is represented by the IEEE infinity.
inline bool is_inf(double q) { return std::isinf(q); }

/// 1/q with the convention 1/∞ = 0.
inline double inv_index(double q) { return is_inf(q) ? 0.0 : 1.0 / q; }

/// Validates q ∈ [1, ∞] (NaN rejected); `what` names the parameter in messages.
inline double check_index(double q, const char* what) {
    if (std::isnan(q) || q < 1.0)
        fail(ErrorKind::config, "OutOfDomain",
             std::string(what) + " must lie in [1, inf], got " + std::to_string(q));
    return q;
}

/// 2^x as a double.
inline double pow2(double x) { return std::exp2(x); }

/// Number of lattice points per axis at dyadic scale j.
inline std::int64_t scale_size(int j) { return std::int64_t(1) << j; }

/// Positive modulus (periodic wrap of a cube index at scale j).
inline std::int64_t wrap_index(std::int64_t k, std::int64_t n) {
    std::int64_t m = k % n;
    return m < 0 ? m + n : m;
}

}  // namespace leaderscope
