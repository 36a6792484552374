#pragma once

// Admissible weight sequences σ = (σ_j)_{j≥0} and their scaling machinery.
//
// A sequence is admissible when consecutive terms are comparable:
// C⁻¹σ_j ≤ σ_{j+1} ≤ C·σ_j for some C ≥ 1. Its growth is summarized by the
// Boyd-type dilation indices
//
//   s̲(σ) = lim_J log₂(inf_k σ_{J+k}/σ_k)/J,   s̄(σ) = lim_J log₂(sup_k σ_{J+k}/σ_k)/J,
//
// estimated here at finite depth J from quotients with base offset k ∈ [⌈J/2⌉, J]
// (short-baseline quotients carry the largest finite-size bias and are skipped;
// the estimate needs σ up to index 2J). For σ_j = 2^{js}(1+j)^b this puts both
// estimates within |b|·log₂3/J of s, and pure powers (b = 0) are exact.
//
// Families γ^(h)_j = 2^{jh}·m_j with an admissible modulation m index nested
// scaling conditions by h; ζ(h) = s̄(γ^(h)/σ) is the resulting scaling function,
// exactly affine in h with slope 1.

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "leaderscope/common.hpp"

namespace leaderscope {

/// Closed-form model σ_j = 2^{js}·(1+j)^b.
struct PowerLog {
    double s = 0.0;
    double b = 0.0;
};

struct BoydIndices {
    double lower = 0.0;  ///< s̲ estimate
    double upper = 0.0;  ///< s̄ estimate
};

/// Positive weight sequence, lazily evaluated. Two models:
///  - PowerLog(s, b): closed form, defined for every j;
///  - tabulated values σ_0..σ_{n−1}, extended beyond the table by repeating the
///    last tabulated ratio σ_{n−1}/σ_{n−2} (so the extension stays admissible).
/// All evaluation runs in log₂ space to stay stable at large j.
class AdmissibleSequence {
public:
    static AdmissibleSequence power_log(double s, double b = 0.0);

    /// Throws InvalidSequence unless all values are finite and > 0 (need ≥ 1 value).
    static AdmissibleSequence tabulated(const std::vector<double>& values);

    double value(std::size_t j) const { return pow2(log2_value(j)); }
    double log2_value(std::size_t j) const;

    /// The sequence j ↦ 1/σ_j.
    AdmissibleSequence inverse() const;

    /// The sequence j ↦ 2^{jh}·σ_j.
    AdmissibleSequence scaled_by_power(double h) const;

    /// Smallest C with C⁻¹σ_j ≤ σ_{j+1} ≤ C·σ_j (scans the table; closed form
    /// for PowerLog). Always ≥ 1 and finite for valid sequences.
    double admissibility_constant() const;

    /// Model accessors (PowerLog model is exact under inverse/scaled_by_power).
    const PowerLog* power_log_model() const { return std::get_if<PowerLog>(&model_); }
    /// Tabulated source values, if this sequence was built from a table.
    std::optional<std::vector<double>> table_values() const;

private:
    struct Table {
        std::vector<double> log2_values;  // log₂ σ_0..σ_{n−1}
        double tail_log2_ratio = 0.0;     // log₂(σ_{n−1}/σ_{n−2}), 0 for n == 1
        double shift = 0.0;               // extra exponent: +j·shift applied on top
        bool negated = false;             // true → use −log₂ values (inverse)
    };
    std::variant<PowerLog, Table> model_;
};

/// Finite-depth Boyd index estimates; evaluates σ up to index 2J.
/// Throws OutOfDomain when J == 0.
BoydIndices boyd_indices(const AdmissibleSequence& sigma, std::size_t J);

/// Half-width of the a-priori error band for the depth-J estimate of a sequence
/// behaving like 2^{js}(1+j)^b: 4|b|·log₂(1+J)/J (plus a tiny absolute floor).
/// |b| is taken from the model when available, otherwise fitted.
double boyd_envelope(const AdmissibleSequence& sigma, std::size_t J);

/// Tail-sum witnesses ξ_J = σ_J⁻¹·2^{−Jm}·Σ_{j=J}^{J_max} ε_j·2^{jm}·σ_j for
/// J = 0..J_max. Requires s̲(σ⁻¹) > m (checked via boyd_indices; throws
/// IndexConditionViolated). eps must have J_max+1 nonnegative entries.
std::vector<double> tail_sum_witness(const AdmissibleSequence& sigma,
                                     const std::vector<double>& eps, double m,
                                     std::size_t J_max);

/// Head-sum witnesses ξ_J = σ_J⁻¹·2^{−Jm}·Σ_{j=0}^{J} ε_j·2^{jm}·σ_j for
/// J = 0..J_max. Requires s̲(σ⁻¹) < m (checked via boyd_indices; throws
/// IndexConditionViolated).
std::vector<double> head_sum_witness(const AdmissibleSequence& sigma,
                                     const std::vector<double>& eps, double m,
                                     std::size_t J_max);

/// Family γ^(h)_j = 2^{jh}·m_j with indices (p, q) attached.
class AdmissibleFamily {
public:
    AdmissibleFamily(AdmissibleSequence modulation, double p, double q);

    /// Modulation m ≡ 1: γ^(h)_j = 2^{jh}.
    static AdmissibleFamily canonical(double p, double q);

    AdmissibleSequence at(double h) const { return modulation_.scaled_by_power(h); }
    const AdmissibleSequence& modulation() const { return modulation_; }
    double p() const { return p_; }
    double q() const { return q_; }

private:
    AdmissibleSequence modulation_;
    double p_, q_;
};

/// Sufficient check that the family's conditions strengthen with h:
/// returns c = min_{j ≤ J} (γ^(h')_j/γ^(h)_j)·2^{−j(h'−h)}, which must be > 0.
/// Requires h < h'. For modulations independent of h this is exactly 1.
double decreasing_surrogate(const AdmissibleFamily& family, double h, double h_prime,
                            std::size_t J);

struct RatioOptions {
    std::size_t boyd_depth = 64;  ///< J used for every internal Boyd estimate
    double bracket_lo_eps = 1e-6; ///< bisection bracket starts at −d/p + eps
    double bracket_hi = 16.0;     ///< upper end of the bisection bracket
    double bisect_tol = 1e-9;
};

/// Scaling function ζ(h) = s̄(γ^(h)/σ) with its derived exponents. All Boyd
/// estimates run at a fixed depth (default 64); inverse values are found by
/// bisection (ζ is exactly affine with slope 1 in h, so bisection is reliable).
class RatioFunction {
public:
    using Options = RatioOptions;

    /// d ∈ {1, 2}; r ∈ [1, ∞].
    RatioFunction(AdmissibleSequence sigma, AdmissibleFamily family, int d, double r,
                  RatioOptions options = {});

    /// Lower/upper Boyd estimates of the ratio γ^(h)/σ at the configured depth.
    BoydIndices zeta_estimates(double h) const;

    /// Upper estimate; throws CompatibilityViolated when the lower and upper
    /// estimates disagree by more than twice the a-priori envelope (the pair is
    /// reported in the message).
    double zeta(double h) const;

    /// ζ⁻¹(−d/r): smallest admissible pointwise exponent for the (σ, r) pair.
    /// Throws CompatibilityViolated when the target is not bracketed.
    double h_min() const;

    /// ζ⁻¹(d/(αr) − d/r) for α ∈ [1, ∞]; h_star(∞) = h_min, h_star(1) = ζ⁻¹(0).
    double h_star(double alpha) const;

    int d() const { return d_; }
    double r() const { return r_; }
    const AdmissibleSequence& sigma() const { return sigma_; }
    const AdmissibleFamily& family() const { return family_; }
    const Options& options() const { return options_; }

private:
    double invert(double target) const;

    AdmissibleSequence sigma_;
    AdmissibleFamily family_;
    int d_;
    double r_;
    Options options_;
};

}  // namespace leaderscope
