#include "leaderscope/admissible.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <Eigen/Dense>

namespace leaderscope {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

/// Boyd quotient scan over log₂ values: base offsets k ∈ [⌈J/2⌉, J].
BoydIndices boyd_from_log(const std::function<double(std::size_t)>& log2_seq, std::size_t J) {
    if (J == 0) fail(ErrorKind::config, "OutOfDomain", "boyd_indices: J must be >= 1");
    const std::size_t k_lo = (J + 1) / 2;
    double lo = kInf, hi = -kInf;
    for (std::size_t k = k_lo; k <= J; ++k) {
        const double q = log2_seq(J + k) - log2_seq(k);  // log₂(σ_{J+k}/σ_k)
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }
    return BoydIndices{lo / double(J), hi / double(J)};
}

/// |b| from the least-squares fit L(j) ≈ c + s·j + b·log₂(1+j) over j ∈ [0, j_hi].
double fitted_log_weight(const std::function<double(std::size_t)>& log2_seq, std::size_t j_hi) {
    const std::size_t n = j_hi + 1;
    Eigen::MatrixXd A(n, 3);
    Eigen::VectorXd y(n);
    for (std::size_t j = 0; j < n; ++j) {
        A(j, 0) = 1.0;
        A(j, 1) = double(j);
        A(j, 2) = std::log2(1.0 + double(j));
        y(j) = log2_seq(j);
    }
    Eigen::Vector3d coef = A.colPivHouseholderQr().solve(y);
    return std::abs(coef(2));
}

double envelope_from_weight(double abs_b, std::size_t J) {
    return 4.0 * abs_b * std::log2(1.0 + double(J)) / double(J) + 1e-9;
}

}  // namespace

// ── AdmissibleSequence ──────────────────────────────────────────────────────

AdmissibleSequence AdmissibleSequence::power_log(double s, double b) {
    if (!std::isfinite(s) || !std::isfinite(b))
        fail(ErrorKind::config, "InvalidSequence", "power_log: s and b must be finite");
    AdmissibleSequence seq;
    seq.model_ = PowerLog{s, b};
    return seq;
}

AdmissibleSequence AdmissibleSequence::tabulated(const std::vector<double>& values) {
    if (values.empty())
        fail(ErrorKind::config, "InvalidSequence", "tabulated: need at least one value");
    Table t;
    t.log2_values.reserve(values.size());
    for (double v : values) {
        if (!(v > 0.0) || !std::isfinite(v))
            fail(ErrorKind::config, "InvalidSequence",
                 "tabulated: values must be finite and > 0, got " + fmt(v));
        t.log2_values.push_back(std::log2(v));
    }
    if (t.log2_values.size() >= 2)
        t.tail_log2_ratio = t.log2_values.back() - t.log2_values[t.log2_values.size() - 2];
    AdmissibleSequence seq;
    seq.model_ = std::move(t);
    return seq;
}

double AdmissibleSequence::log2_value(std::size_t j) const {
    if (const PowerLog* pl = std::get_if<PowerLog>(&model_))
        return double(j) * pl->s + pl->b * std::log2(1.0 + double(j));
    const Table& t = std::get<Table>(model_);
    const std::size_t n = t.log2_values.size();
    double base = (j < n) ? t.log2_values[j]
                          : t.log2_values[n - 1] + double(j - (n - 1)) * t.tail_log2_ratio;
    if (t.negated) base = -base;
    return base + double(j) * t.shift;
}

AdmissibleSequence AdmissibleSequence::inverse() const {
    AdmissibleSequence out = *this;
    if (PowerLog* pl = std::get_if<PowerLog>(&out.model_)) {
        pl->s = -pl->s;
        pl->b = -pl->b;
    } else {
        Table& t = std::get<Table>(out.model_);
        t.negated = !t.negated;
        t.shift = -t.shift;
    }
    return out;
}

AdmissibleSequence AdmissibleSequence::scaled_by_power(double h) const {
    AdmissibleSequence out = *this;
    if (PowerLog* pl = std::get_if<PowerLog>(&out.model_))
        pl->s += h;
    else
        std::get<Table>(out.model_).shift += h;
    return out;
}

double AdmissibleSequence::admissibility_constant() const {
    if (const PowerLog* pl = std::get_if<PowerLog>(&model_)) {
        // log₂(σ_{j+1}/σ_j) = s + b·log₂((2+j)/(1+j)) is linear in t = log₂((2+j)/(1+j)) ∈ (0,1],
        // so the extreme ratios sit at j = 0 and j → ∞.
        const double m = std::max(std::abs(pl->s + pl->b), std::abs(pl->s));
        return pow2(m);
    }
    const Table& t = std::get<Table>(model_);
    double m = 0.0;
    auto ratio = [&](double raw) {
        const double signed_raw = t.negated ? -raw : raw;
        m = std::max(m, std::abs(signed_raw + t.shift));
    };
    for (std::size_t j = 0; j + 1 < t.log2_values.size(); ++j)
        ratio(t.log2_values[j + 1] - t.log2_values[j]);
    ratio(t.tail_log2_ratio);
    return pow2(m);
}

std::optional<std::vector<double>> AdmissibleSequence::table_values() const {
    const Table* t = std::get_if<Table>(&model_);
    if (!t) return std::nullopt;
    std::vector<double> out;
    out.reserve(t->log2_values.size());
    for (std::size_t j = 0; j < t->log2_values.size(); ++j) out.push_back(value(j));
    return out;
}

// ── Boyd indices and witnesses ──────────────────────────────────────────────

BoydIndices boyd_indices(const AdmissibleSequence& sigma, std::size_t J) {
    return boyd_from_log([&](std::size_t j) { return sigma.log2_value(j); }, J);
}

double boyd_envelope(const AdmissibleSequence& sigma, std::size_t J) {
    if (J == 0) fail(ErrorKind::config, "OutOfDomain", "boyd_envelope: J must be >= 1");
    double abs_b;
    if (const PowerLog* pl = sigma.power_log_model())
        abs_b = std::abs(pl->b);
    else
        abs_b = fitted_log_weight([&](std::size_t j) { return sigma.log2_value(j); }, 2 * J);
    return envelope_from_weight(abs_b, J);
}

namespace {

void check_witness_args(const std::vector<double>& eps, std::size_t J_max) {
    if (eps.size() != J_max + 1)
        fail(ErrorKind::config, "OutOfDomain",
             "witness: eps must have J_max+1 entries, got " + std::to_string(eps.size()));
    for (double e : eps)
        if (!(e >= 0.0) || !std::isfinite(e))
            fail(ErrorKind::config, "OutOfDomain", "witness: eps entries must be finite and >= 0");
}

std::vector<double> witness_sums(const AdmissibleSequence& sigma, const std::vector<double>& eps,
                                 double m, std::size_t J_max, bool tail) {
    std::vector<double> xi(J_max + 1, 0.0);
    for (std::size_t J = 0; J <= J_max; ++J) {
        const double lJ = sigma.log2_value(J);
        double acc = 0.0;
        const std::size_t j_lo = tail ? J : 0;
        const std::size_t j_hi = tail ? J_max : J;
        for (std::size_t j = j_lo; j <= j_hi; ++j) {
            if (eps[j] == 0.0) continue;
            // ε_j · 2^{(j−J)m} · σ_j/σ_J, assembled in log₂ space for stability
            acc += eps[j] * pow2((double(j) - double(J)) * m + sigma.log2_value(j) - lJ);
        }
        xi[J] = acc;
    }
    return xi;
}

}  // namespace

std::vector<double> tail_sum_witness(const AdmissibleSequence& sigma,
                                     const std::vector<double>& eps, double m,
                                     std::size_t J_max) {
    check_witness_args(eps, J_max);
    const std::size_t depth = std::max<std::size_t>(J_max, 16);
    const BoydIndices inv = boyd_indices(sigma.inverse(), depth);
    if (!(inv.lower > m))
        fail(ErrorKind::precondition, "IndexConditionViolated",
             "tail_sum_witness requires lower index of 1/sigma > m; estimate " + fmt(inv.lower) +
                 " at m = " + fmt(m));
    return witness_sums(sigma, eps, m, J_max, /*tail=*/true);
}

std::vector<double> head_sum_witness(const AdmissibleSequence& sigma,
                                     const std::vector<double>& eps, double m,
                                     std::size_t J_max) {
    check_witness_args(eps, J_max);
    const std::size_t depth = std::max<std::size_t>(J_max, 16);
    const BoydIndices inv = boyd_indices(sigma.inverse(), depth);
    if (!(inv.lower < m))
        fail(ErrorKind::precondition, "IndexConditionViolated",
             "head_sum_witness requires lower index of 1/sigma < m; estimate " + fmt(inv.lower) +
                 " at m = " + fmt(m));
    return witness_sums(sigma, eps, m, J_max, /*tail=*/false);
}

// ── AdmissibleFamily ────────────────────────────────────────────────────────

AdmissibleFamily::AdmissibleFamily(AdmissibleSequence modulation, double p, double q)
    : modulation_(std::move(modulation)), p_(check_index(p, "p")), q_(check_index(q, "q")) {}

AdmissibleFamily AdmissibleFamily::canonical(double p, double q) {
    return AdmissibleFamily(AdmissibleSequence::power_log(0.0, 0.0), p, q);
}

double decreasing_surrogate(const AdmissibleFamily& family, double h, double h_prime,
                            std::size_t J) {
    if (!(h < h_prime))
        fail(ErrorKind::config, "OutOfDomain", "decreasing_surrogate: need h < h'");
    const AdmissibleSequence lo = family.at(h);
    const AdmissibleSequence hi = family.at(h_prime);
    double c = kInf;
    for (std::size_t j = 0; j <= J; ++j)
        c = std::min(c, pow2(hi.log2_value(j) - lo.log2_value(j) - double(j) * (h_prime - h)));
    return c;
}

// ── RatioFunction ───────────────────────────────────────────────────────────

RatioFunction::RatioFunction(AdmissibleSequence sigma, AdmissibleFamily family, int d, double r,
                             Options options)
    : sigma_(std::move(sigma)), family_(std::move(family)), d_(d), r_(check_index(r, "r")),
      options_(options) {
    if (d_ != 1 && d_ != 2)
        fail(ErrorKind::config, "OutOfDomain", "RatioFunction: d must be 1 or 2");
    if (options_.boyd_depth == 0)
        fail(ErrorKind::config, "OutOfDomain", "RatioFunction: boyd_depth must be >= 1");
}

BoydIndices RatioFunction::zeta_estimates(double h) const {
    if (h <= -double(d_) * inv_index(family_.p()))
        fail(ErrorKind::config, "OutOfDomain",
             "zeta: h must exceed -d/p = " + fmt(-double(d_) * inv_index(family_.p())) +
                 ", got " + fmt(h));
    const AdmissibleSequence gamma = family_.at(h);
    return boyd_from_log(
        [&](std::size_t j) { return gamma.log2_value(j) - sigma_.log2_value(j); },
        options_.boyd_depth);
}

double RatioFunction::zeta(double h) const {
    const BoydIndices est = zeta_estimates(h);

    // Envelope of the ratio γ^(h)/σ: the 2^{jh} factor contributes no log term,
    // so the weight is h-independent and can use h = 0.
    double abs_b;
    const PowerLog* pm = family_.modulation().power_log_model();
    const PowerLog* ps = sigma_.power_log_model();
    if (pm && ps) {
        abs_b = std::abs(pm->b - ps->b);
    } else {
        const AdmissibleSequence gamma0 = family_.at(0.0);
        abs_b = fitted_log_weight(
            [&](std::size_t j) { return gamma0.log2_value(j) - sigma_.log2_value(j); },
            2 * options_.boyd_depth);
    }
    const double env = envelope_from_weight(abs_b, options_.boyd_depth);
    if (est.upper - est.lower > 2.0 * env)
        fail(ErrorKind::precondition, "CompatibilityViolated",
             "scaling function ill-determined at h = " + fmt(h) + ": estimates (" +
                 fmt(est.lower) + ", " + fmt(est.upper) + ") differ by more than twice the "
                 "envelope " + fmt(env));
    return est.upper;
}

double RatioFunction::invert(double target) const {
    double lo = -d_ * inv_index(family_.p()) + options_.bracket_lo_eps;
    double hi = options_.bracket_hi;
    const double z_lo = zeta(lo);
    const double z_hi = zeta(hi);
    if (z_lo > target)
        fail(ErrorKind::precondition, "CompatibilityViolated",
             "no h in bracket with zeta(h) <= " + fmt(target) + "; zeta(" + fmt(lo) + ") = " +
                 fmt(z_lo));
    if (z_hi < target)
        fail(ErrorKind::precondition, "CompatibilityViolated",
             "zeta stays below " + fmt(target) + " on the whole bracket; zeta(" + fmt(hi) +
                 ") = " + fmt(z_hi));
    while (hi - lo > options_.bisect_tol) {
        const double mid = 0.5 * (lo + hi);
        if (zeta(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double RatioFunction::h_min() const { return invert(-double(d_) * inv_index(r_)); }

double RatioFunction::h_star(double alpha) const {
    check_index(alpha, "alpha");
    // d/(αr) − d/r with the 1/∞ = 0 convention.
    const double t = double(d_) * inv_index(alpha) * inv_index(r_) - double(d_) * inv_index(r_);
    return invert(t);
}

}  // namespace leaderscope
