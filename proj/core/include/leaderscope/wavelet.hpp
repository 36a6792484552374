#pragma once

// Periodic orthonormal wavelet analysis on 2^{Jd} samples, d ∈ {1, 2}.
//
// The filter bank runs a circular-convolution cascade down to scale 0. Detail
// outputs are stored L∞-normalized: c_{i,j,k} = 2^{(j−J)d/2} · (raw cascade
// detail), which makes |c| comparable across sampling rates (the coefficient of
// a bounded function stays O(1) as J grows). The scale-0 approximation is kept
// as C = 2^{−Jd/2} · (raw cascade approximation).
//
// 2-D transforms are separable; orientations are i = 1 (high-pass along axis 0),
// i = 2 (high-pass along axis 1), i = 3 (high-pass along both).

#include <cstdint>
#include <string>
#include <vector>

#include "leaderscope/common.hpp"

namespace leaderscope {

struct WaveletFilter {
    std::string name;
    std::vector<double> lo;  ///< analysis low-pass taps
    std::vector<double> hi;  ///< analysis high-pass taps: hi[m] = (−1)^m·lo[L−1−m]
    int vanishing_moments = 0;
    int support_radius_log2 = 0;  ///< smallest j0 with supp ψ ⊂ [−2^{j0}, 2^{j0}]
};

/// Built-in orthonormal filters: "haar", "db2", "db3", "db4", "db6", "db8".
/// Throws FilterMismatch for unknown names.
WaveletFilter make_filter(const std::string& name);

/// Names accepted by make_filter, in order of vanishing moments.
std::vector<std::string> filter_names();

/// Max deviation from the orthonormality identities
/// Σ_m lo[m]lo[m+2t] = δ_t, Σ_m hi[m]hi[m+2t] = δ_t, Σ_m lo[m]hi[m+2t] = 0.
double orthogonality_defect(const WaveletFilter& filter);

/// Sampled signal on the periodized grid: 2^{Jd} values, row-major for d = 2
/// (index = k0 + 2^J·k1).
struct Signal {
    int d = 1;
    int J = 0;
    std::vector<double> samples;
};

/// Validates the sample count against (d, J); throws InvalidShape otherwise.
void check_signal(const Signal& signal);

/// Full multiscale decomposition. Detail scales j ∈ [0, J−1], each with
/// 2^{jd} coefficients per orientation; a single scale-0 approximation value.
struct CoefficientPyramid {
    int d = 1;
    int J = 0;  ///< number of detail levels (scales 0..J−1)
    std::vector<double> coarse;  ///< scale-0 approximation (one value)
    /// detail[j][i−1][flat k]; flat k = k0 (+ 2^j·k1 for d = 2)
    std::vector<std::vector<std::vector<double>>> detail;
    static constexpr const char* normalization = "Linf";

    int orientations() const { return d == 1 ? 1 : 3; }
    std::int64_t cubes_per_scale(int j) const { return std::int64_t(1) << (j * d); }

    /// Pyramid of the right shape with all coefficients zero.
    static CoefficientPyramid zeros(int d, int J);

    double& at(int i, int j, std::int64_t flat) { return detail[j][i - 1][flat]; }
    double at(int i, int j, std::int64_t flat) const { return detail[j][i - 1][flat]; }

    /// Throws InvalidShape when the nested sizes are inconsistent.
    void check() const;
};

/// Analysis cascade: signal must hold 2^{Jd} samples (J taken from the signal).
CoefficientPyramid decompose(const Signal& signal, const WaveletFilter& filter);

/// Synthesis cascade; exact inverse of decompose up to rounding.
Signal reconstruct(const CoefficientPyramid& pyramid, const WaveletFilter& filter);

}  // namespace leaderscope
