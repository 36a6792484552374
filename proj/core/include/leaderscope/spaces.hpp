#pragma once

// Pointwise-space membership tests and the two multiscale norms.
//
// Every criterion reduces to the same shape: build a per-scale sequence
// a_j ≥ 0 that is bounded (resp. ℓ^q-summable) exactly when the function
// belongs to the space, then decide membership from the slope of
// log₂ a_j against j. The ℓ^q surrogate accepts when the fitted slope does
// not exceed a tolerance; for finite q the tolerance is lowered by the slope
// of the borderline sequence a_j = j^{−1/q} over the same scale window. The
// verdict is inconclusive when the ±2·stderr confidence band straddles the
// threshold; score = slope − threshold is ≤ 0 for members.
//
// Scale windows for verdicts drop the two coarsest available scales
// (constant-dominated) on top of any leader guard band.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "leaderscope/admissible.hpp"
#include "leaderscope/common.hpp"
#include "leaderscope/dyadic.hpp"
#include "leaderscope/leaders.hpp"
#include "leaderscope/regression.hpp"
#include "leaderscope/wavelet.hpp"

namespace leaderscope {

enum class Verdict { member, non_member, inconclusive };

const char* to_string(Verdict v);

struct SurrogateOptions {
    double tol_slope = 0.05;  ///< acceptance slack on the fitted slope
    double band_factor = 2.0; ///< confidence band half-width in slope stderrs
};

struct MembershipResult {
    Verdict verdict = Verdict::inconclusive;
    double score = 0.0;      ///< slope − threshold (≤ 0 for members)
    double threshold = 0.0;
    LineFit fit;             ///< fit of log₂ a_j against j
    std::vector<int> scales; ///< scales used for the fit
    std::vector<double> values;  ///< the a_j over those scales
    std::string note;        ///< diagnostics (fallbacks, degenerate data)
};

/// Core ℓ^q boundedness surrogate on a nonnegative per-scale sequence.
/// scales must be increasing with scales.front() ≥ 1 and ≥ 4 entries.
/// An all-zero sequence is a member by convention.
MembershipResult lq_surrogate(const std::vector<int>& scales, const std::vector<double>& values,
                              double q, const SurrogateOptions& options = {});

// ── direct (signal-side) tests ──────────────────────────────────────────────

/// Per-scale local difference magnitudes
///   raw_j = max_{h grid step, 0 < |h| ≤ 2^{−j}} ( mean_{x ∈ B_{j,h}} |Δ_h^{n+1} f(x)|^p )^{1/p}
/// (max over stencil points for p = ∞), where B_{j,h} keeps the whole stencil
/// inside the periodic ball ‖x − x0‖_∞ ≤ 2^{−j} and the mean is over grid
/// points in that ball. n+1 = n_plus_1 ≥ 1. Requires the ball to contain at
/// least 2^3 = 8 grid points per difference order (throws ResolutionError).
std::vector<double> finite_difference_norms(const Signal& signal, const Point& x0,
                                            double p, int n_plus_1,
                                            const std::vector<int>& scales);

/// Polynomial of best L^p approximation on the grid ball ‖x − x0‖_∞ ≤ 2^{−j}.
/// p = 2 is an exact least-squares solve; p ∈ (1, ∞) runs IRLS (≤ 20 rounds,
/// stagnation 1e-10); p ∈ {1, ∞} falls back to p = 2 with a diagnostic note.
/// Throws ResolutionError when the ball has fewer than 8·(degree+1) samples.
struct LocalPolynomial {
    Point x0{0.0, 0.0};
    int d = 1;
    int degree = 0;
    /// Multi-indices in graded lexicographic order (d = 1: α = 0..degree).
    std::vector<std::array<int, 2>> alphas;
    /// Derivative values D^α P(x0) (the fit's Taylor data at x0).
    std::vector<double> derivs;
    /// Display coefficients D^α P(x0)/|α|! matching the normalized local expansion.
    std::vector<double> coefficients() const;
    double evaluate(const Point& x) const;  ///< Taylor form Σ D^α/α!·(x−x0)^α
    double residual = 0.0;  ///< attained L^p misfit on the ball (mean-power form)
    std::string note;
};
LocalPolynomial best_polynomial(const Signal& signal, const Point& x0, int j, int degree,
                                double p);

struct DirectOptions {
    /// Scales to probe; empty → [2, J−3] clipped to resolution limits.
    std::vector<int> scales;
    /// Apply the logarithmic weight correction (see below).
    bool log_corrected = false;
    SurrogateOptions surrogate;
    std::size_t boyd_depth = 64;  ///< depth for the index estimates of σ
};

/// Signal-side membership from the local polynomial misfit: a_j = w_j · r_j
/// with r_j the Riemann-sum L^p error ‖f−P‖_{L^p(ball 2^{−j})} of the
/// degree-⌊s̄(σ)⌋ best polynomial (the fit's mean-power misfit times
/// (n_ball/N^d)^{1/p}), and weight w_j = σ_j·2^{jd/p} (plain) or
/// w_j = σ_j·2^{jd/p}/|log₂(2^{−jd/p}·σ_j⁻¹)| (log-corrected; scales where
/// the log factor is smaller than 1/2 are dropped). Scales whose ball is too
/// small for the fit are clipped from the default window. The log-corrected
/// mode requires inf_k σ_{k+1}/σ_k > 2^{−d/p} and 2^{−jd/p}·σ_j⁻¹ → 0
/// (throws IndexConditionViolated otherwise).
MembershipResult direct_membership(const Signal& signal, const Point& x0,
                                   const AdmissibleSequence& sigma, double p, double q,
                                   const DirectOptions& options = {});

/// Taylor data of the unique local polynomial: fits best_polynomial at the
/// four finest usable scales and extrapolates each derivative value across
/// them. Requires ⌊s̄(σ)⌋ < s̲(σ) estimate-wise (throws
/// IndexConditionViolated); the inconclusive flag is set when the values do
/// not settle (no Cauchy decay).
struct UniquePolynomialResult {
    LocalPolynomial polynomial;
    double cauchy_defect = 0.0;  ///< max residual step between the finest fits
    bool inconclusive = false;
};
UniquePolynomialResult unique_polynomial(const Signal& signal, const Point& x0,
                                         const AdmissibleSequence& sigma, double p,
                                         std::size_t boyd_depth = 64);

// ── leader (coefficient-side) tests ─────────────────────────────────────────

/// Leader-side membership: a_j = σ_j · (local leader at x0, scale j), fitted
/// over the reported scales minus the two coarsest. Requires ≥ 6 usable
/// scales (throws ResolutionError).
MembershipResult leader_criterion(const LeaderPyramid& lp, const Point& x0,
                                  const AdmissibleSequence& sigma, double q,
                                  const SurrogateOptions& options = {});

/// Log-corrected leader-side membership: weight σ_j/|log₂(2^{−jd/p}·σ_j⁻¹)|
/// with p = lp.p; same preconditions as the log-corrected direct mode.
MembershipResult log_corrected_criterion(const LeaderPyramid& lp, const Point& x0,
                                         const AdmissibleSequence& sigma, double q,
                                         const SurrogateOptions& options = {});

/// Two-scale window test on raw coefficients:
///   a_j = 2^{(η−d/p)j} · ( Σ_{‖k−2^j·x0‖_∞ < C*·2^j, all i} |c_λ|^p )^{1/p}
/// (periodic distance; max for p = ∞), verdict from the ℓ^q surrogate over
/// the detail scales minus the two coarsest.
MembershipResult xu_check(const CoefficientPyramid& pyramid, const Point& x0, double eta,
                          double p, double q, double C_star = 1.0,
                          const SurrogateOptions& options = {});

// ── norms ───────────────────────────────────────────────────────────────────

/// Oscillation-type norm from p-leaders:
///   ( Σ_{j ≤ J_trunc−guard} ( Σ_{λ ∈ Λ_j} (σ_j·2^{−jd/r}·d^p_λ)^r )^{q/r} )^{1/q} + |C|
/// with the usual max conventions at r = ∞ or q = ∞.
double oscillation_norm(const CoefficientPyramid& pyramid, const AdmissibleSequence& sigma,
                        double p, double r, double q, int guard = 2);

/// Besov-type norm from raw coefficients:
///   ( Σ_{j ≤ J−1−guard} ( Σ_{λ ∈ Λ_j, all i} (σ_j·2^{−jd/r}·|c_λ|)^r )^{q/r} )^{1/q} + |C|
/// By default every detail scale enters; pass the leader guard to sum the same
/// trimmed window as oscillation_norm when comparing the two.
double besov_norm(const CoefficientPyramid& pyramid, const AdmissibleSequence& sigma,
                  double r, double q, int guard = 0);

/// Per-scale Besov summands σ_j·2^{−jd/r}·(Σ_λ |c_λ|^r)^{1/r} for
/// j ∈ [0, J−1] (no trimming) — the building blocks of besov_norm.
std::vector<double> besov_scale_terms(const CoefficientPyramid& pyramid,
                                      const AdmissibleSequence& sigma, double r);

}  // namespace leaderscope
