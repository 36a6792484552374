#pragma once

/// Synthetic test functions with known regularity, produced directly as
/// coefficient pyramids (or sampled signals for the cusp family):
///
///   • saturating functions — one coefficient planted in a chosen subcube of
///     every dyadic cube, sized so the Besov norm just converges while the
///     leaders realize a full range of pointwise exponents,
///   • cone functions — a single coefficient chain over one point x₀ whose
///     local leaders are known in closed form,
///   • cusp signals |x − x₀|^u, windowed away from the periodic seam,
///   • random series tuned to land near the unit sphere of a Besov space.

#include <cstdint>
#include <vector>

#include "leaderscope/admissible.hpp"
#include "leaderscope/dyadic.hpp"
#include "leaderscope/wavelet.hpp"

namespace leaderscope {

/// Smallest m₀ ∈ {0, 1, 2, …} with d < (ζ(h) − ε₀ − d/(αr) + d/r)·2^{d·m₀}·α.
/// Throws NoValidM0 when ζ(h) − ε₀ ≤ d/(αr) − d/r, which makes the bracket
/// nonpositive and the inequality unsatisfiable.
int m0_minimal(double alpha, double r, double zeta_h, double eps0, int d);

/// Parameters of a saturating function.
struct SaturatingSpec {
    AdmissibleSequence sigma;  ///< weight sequence of the target Besov space
    double r = 2.0;            ///< integrability index, in [1, ∞]
    double s = 2.0;            ///< summability index, in [1, ∞]
    int m0 = 1;                ///< subcube depth offset
    std::int64_t n = 1;        ///< subcube selector, in [1, 2^{d·m0}]
    int J = 12;                ///< finest populated coefficient scale
    int d = 1;                 ///< ambient dimension, 1 or 2

    /// a₀ = 1 + 1/r + 1/s ∈ (1, 3]; the planted coefficients carry j^{−a₀}.
    double a0() const { return 1.0 + inv_index(r) + inv_index(s); }
};

/// Plants, for every cube λ at every scale j ∈ [1, J−m₀], the coefficient
///   c = j^{−a₀} · 2^{jd/r} · 2^{−l(λ)d/r} · σ_j⁻¹   (l(λ) = irreducible scale)
/// in the n-th subcube of λ at scale j + m₀ (orientation-major, then offsets
/// in lexicographic axis order); every other coefficient is zero.  The result
/// has detail scales 0…J inclusive.  Throws ResolutionError when J < m₀ + 1.
CoefficientPyramid gen_saturating(const SaturatingSpec& spec);

/// A single-chain function over x₀ together with its closed-form leaders.
struct ConeFunction {
    CoefficientPyramid pyramid;
    Point x0{0.0, 0.0};
    double h = 0.0;              ///< chain exponent h_min + 1/n
    std::vector<double> theta;   ///< θ_j, the chain coefficient at scale j
    std::vector<double> dinf;    ///< sup_{j′ ≥ j} θ_{j′} over the detail range
};

/// Chain coefficients θ_j = 1/(γ_j^{(h)}·(1+j)^{1+1/s}) with h = h_min + 1/n,
/// placed on the cube containing x₀ at every scale (orientation 1); zero
/// elsewhere.  dinf[j] = max_{j′∈[j, J−1]} θ_{j′} is exact for the p = ∞
/// leaders of this pyramid.  Compatibility failures inside the ratio function
/// propagate (CompatibilityViolated).
ConeFunction gen_cone(const Point& x0, int n, const RatioFunction& rf, double s, int J);

/// Samples x ↦ dist(x, x₀)^u (periodic distance) on a 1-d grid of N = 2^J
/// points, blended to a constant plateau away from the singularity:
/// the value is dist^u for dist ≤ 1/4 and exactly 0.45^u for dist ≥ 0.45,
/// with a C^∞ transition, so nothing singular survives at the seam.
/// u = 0 yields the constant-1 signal.
Signal gen_cusp(double x0, double u, std::int64_t N);

/// Random coefficients c_λ = σ_j⁻¹·2^{jd/r}·count_j^{−1/r}·(1+j)^{−(1/s+0.01)}·ξ_λ
/// with count_j the number of coefficient slots at scale j and ξ_λ an
/// independent uniform sign times a uniform [1/2, 1] magnitude (mt19937_64,
/// fixed draw order: scale, then orientation, then position — bit-identical
/// across platforms for a given seed).  Requires the lower index of σ to be
/// positive (IndexConditionViolated otherwise).
CoefficientPyramid gen_random_besov(const AdmissibleSequence& sigma, double r, double s, int J,
                                    std::uint64_t seed, int d = 1);

}  // namespace leaderscope
