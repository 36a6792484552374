#pragma once

// Shared fixtures for the test binaries: seeded random pyramids/signals and
// small numeric comparators.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "leaderscope/wavelet.hpp"

namespace test_helpers {

/// Dense pyramid with i.i.d. signed uniform coefficients in [−1, −amp/2] ∪ [amp/2, 1].
inline leaderscope::CoefficientPyramid random_pyramid(int d, int J, std::uint64_t seed,
                                                      double amp = 1.0) {
    auto pyr = leaderscope::CoefficientPyramid::zeros(d, J);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mag(0.5, 1.0);
    pyr.coarse[0] = amp * mag(rng) * ((rng() & 1) ? 1.0 : -1.0);
    for (int j = 0; j < J; ++j)
        for (auto& plane : pyr.detail[std::size_t(j)])
            for (auto& c : plane) c = amp * mag(rng) * ((rng() & 1) ? 1.0 : -1.0);
    return pyr;
}

/// Pyramid with a single nonzero detail coefficient.
inline leaderscope::CoefficientPyramid single_spike(int d, int J, int i, int j,
                                                    std::int64_t flat, double value) {
    auto pyr = leaderscope::CoefficientPyramid::zeros(d, J);
    pyr.at(i, j, flat) = value;
    return pyr;
}

/// Random signal with i.i.d. uniform samples in [−1, 1].
inline leaderscope::Signal random_signal(int d, int J, std::uint64_t seed) {
    leaderscope::Signal s;
    s.d = d;
    s.J = J;
    const std::size_t count = std::size_t(1) << (d * J);
    s.samples.resize(count);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& v : s.samples) v = u(rng);
    return s;
}

inline bool close_rel(double a, double b, double tol) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) <= tol * scale;
}

}  // namespace test_helpers
