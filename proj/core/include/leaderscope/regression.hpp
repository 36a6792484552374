#pragma once

// Ordinary least-squares line fits on (scale, log₂ magnitude) data.
// Every scaling estimate in the library reduces to such a fit, so the slope
// standard error is computed here once and reused for confidence bands.

#include <cstddef>
#include <vector>

namespace leaderscope {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    /// Standard error of the slope: sqrt(RSS/(n−2) / Σ(x−x̄)²); 0 when n == 2.
    double stderr_slope = 0.0;
    std::size_t n = 0;
};

/// Least-squares line through (x_i, y_i). Requires x.size() == y.size() >= 2
/// and at least two distinct abscissae (throws OutOfDomain otherwise).
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace leaderscope
