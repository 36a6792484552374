#include "leaderscope/spaces.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace leaderscope {

namespace {

constexpr double kZeroFloor = 1e-300;   // below this a value counts as exact zero
constexpr double kClampRel = 1e-15;     // relative floor before taking log₂

double circ_dist(double a, double b) {
    double t = std::abs(a - b);
    t -= std::floor(t);
    return std::min(t, 1.0 - t);
}

/// Signed shortest displacement a − b on the circle, in [−1/2, 1/2).
double circ_delta(double a, double b) {
    double t = a - b;
    t -= std::round(t);
    return t;
}

double wrap_unit(double x) {
    double y = x - std::floor(x);
    return (y >= 1.0) ? 0.0 : y;
}

/// Grid indices m with circular distance |m/N − x| ≤ radius, without duplicates.
std::vector<std::int64_t> ball_indices(double x, std::int64_t N, double radius) {
    std::vector<std::int64_t> out;
    const double c = wrap_unit(x) * double(N);
    const double w = radius * double(N) + 1e-9;
    const std::int64_t lo = std::int64_t(std::ceil(c - w));
    const std::int64_t hi = std::int64_t(std::floor(c + w));
    if (hi - lo + 1 >= N) {
        out.resize(std::size_t(N));
        for (std::int64_t m = 0; m < N; ++m) out[std::size_t(m)] = m;
        return out;
    }
    for (std::int64_t m = lo; m <= hi; ++m)
        if (circ_dist(double(m) / double(N), x) <= radius + 1e-12) out.push_back(wrap_index(m, N));
    return out;
}

double binomial(int n, int k) {
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v = v * double(n - k + i) / double(i);
    return v;
}

double factorial(int n) {
    double v = 1.0;
    for (int i = 2; i <= n; ++i) v *= double(i);
    return v;
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::member: return "member";
        case Verdict::non_member: return "non_member";
        default: return "inconclusive";
    }
}

// ── ℓ^q surrogate ───────────────────────────────────────────────────────────

MembershipResult lq_surrogate(const std::vector<int>& scales, const std::vector<double>& values,
                              double q, const SurrogateOptions& options) {
    check_index(q, "q");
    if (scales.size() != values.size())
        fail(ErrorKind::config, "OutOfDomain", "lq_surrogate: mismatched lengths");
    if (scales.size() < 4)
        fail(ErrorKind::precondition, "ResolutionError",
             "lq_surrogate: need at least 4 scales, got " + std::to_string(scales.size()));
    for (std::size_t t = 0; t < scales.size(); ++t) {
        if (scales[t] < 1) fail(ErrorKind::config, "OutOfDomain", "lq_surrogate: scales must be >= 1");
        if (t > 0 && scales[t] <= scales[t - 1])
            fail(ErrorKind::config, "OutOfDomain", "lq_surrogate: scales must be increasing");
        if (!(values[t] >= 0.0) || !std::isfinite(values[t]))
            fail(ErrorKind::config, "OutOfDomain", "lq_surrogate: values must be finite and >= 0");
    }

    MembershipResult res;
    res.scales = scales;
    res.values = values;

    const double j_lo = double(scales.front());
    const double j_hi = double(scales.back());
    // Borderline ℓ^q decay j^{−1/q} has slope −(1/q)·(log₂ j_hi − log₂ j_lo)/(j_hi − j_lo)
    // over this window; bounded-only (q = ∞) needs no decay.
    double threshold = options.tol_slope;
    if (!is_inf(q)) threshold -= (1.0 / q) * (std::log2(j_hi) - std::log2(j_lo)) / (j_hi - j_lo);
    res.threshold = threshold;

    double vmax = 0.0;
    for (double v : values) vmax = std::max(vmax, v);
    if (vmax <= kZeroFloor) {
        res.verdict = Verdict::member;
        res.score = -1e3;
        res.note = "all scale values vanish; member by convention";
        return res;
    }

    std::vector<double> xs(scales.size()), ys(values.size());
    bool clamped = false;
    for (std::size_t t = 0; t < values.size(); ++t) {
        xs[t] = double(scales[t]);
        double v = values[t];
        if (v < vmax * kClampRel) {
            v = vmax * kClampRel;
            clamped = true;
        }
        ys[t] = std::log2(v);
    }
    if (clamped) res.note = "near-zero scale values clamped before log fit";

    res.fit = fit_line(xs, ys);
    res.score = res.fit.slope - threshold;

    const double band = options.band_factor * res.fit.stderr_slope;
    if (res.fit.slope <= threshold)
        res.verdict = (res.fit.slope + band > threshold) ? Verdict::inconclusive : Verdict::member;
    else
        res.verdict = (res.fit.slope - band <= threshold) ? Verdict::inconclusive : Verdict::non_member;
    return res;
}

// ── finite differences ──────────────────────────────────────────────────────

std::vector<double> finite_difference_norms(const Signal& signal, const Point& x0, double p,
                                            int n_plus_1, const std::vector<int>& scales) {
    check_signal(signal);
    check_index(p, "p");
    if (n_plus_1 < 1) fail(ErrorKind::config, "OutOfDomain", "finite_difference_norms: order must be >= 1");
    if (scales.empty()) fail(ErrorKind::config, "OutOfDomain", "finite_difference_norms: no scales given");

    const int J = signal.J;
    const std::int64_t N = std::int64_t(1) << J;
    std::vector<double> binom(std::size_t(n_plus_1) + 1);
    for (int i = 0; i <= n_plus_1; ++i)
        binom[std::size_t(i)] = ((n_plus_1 - i) % 2 == 0 ? 1.0 : -1.0) * binomial(n_plus_1, i);

    std::vector<double> out;
    out.reserve(scales.size());
    for (int j : scales) {
        if (j < 0 || j > J - 3)
            fail(ErrorKind::precondition, "ResolutionError",
                 "finite_difference_norms: scale " + std::to_string(j) +
                     " needs grid resolution >= 2^" + std::to_string(j + 3));
        const double radius = pow2(-j);

        double best = 0.0;
        if (signal.d == 1) {
            const auto ball = ball_indices(x0[0], N, radius);
            const std::int64_t M = std::max<std::int64_t>(1, std::int64_t(radius * double(N)));
            for (std::int64_t t = 1; t <= M; ++t) {  // h = t/N; −h gives the mirrored stencils
                double acc = 0.0;
                std::int64_t count = 0;
                for (std::int64_t m : ball) {
                    bool inside = true;
                    for (int i = 1; i <= n_plus_1 && inside; ++i)
                        inside = circ_dist(double(m + i * t) / double(N), wrap_unit(x0[0])) <=
                                 radius + 1e-12;
                    if (!inside) continue;
                    double delta = 0.0;
                    for (int i = 0; i <= n_plus_1; ++i)
                        delta += binom[std::size_t(i)] *
                                 signal.samples[std::size_t(wrap_index(m + i * t, N))];
                    if (is_inf(p))
                        acc = std::max(acc, std::abs(delta));
                    else
                        acc += std::pow(std::abs(delta), p);
                    ++count;
                }
                if (count == 0) continue;
                const double norm = is_inf(p) ? acc : std::pow(acc / double(count), 1.0 / p);
                best = std::max(best, norm);
            }
        } else {
            const auto ball0 = ball_indices(x0[0], N, radius);
            const auto ball1 = ball_indices(x0[1], N, radius);
            const std::int64_t M = std::max<std::int64_t>(1, std::int64_t(radius * double(N)));
            const double cx = wrap_unit(x0[0]);
            const double cy = wrap_unit(x0[1]);
            for (std::int64_t t1 = 0; t1 <= M; ++t1) {
                for (std::int64_t t0 = (t1 == 0 ? 1 : -M); t0 <= M; ++t0) {
                    double acc = 0.0;
                    std::int64_t count = 0;
                    for (std::int64_t m0 : ball0)
                        for (std::int64_t m1 : ball1) {
                            bool inside = true;
                            for (int i = 1; i <= n_plus_1 && inside; ++i)
                                inside = circ_dist(double(m0 + i * t0) / double(N), cx) <=
                                             radius + 1e-12 &&
                                         circ_dist(double(m1 + i * t1) / double(N), cy) <=
                                             radius + 1e-12;
                            if (!inside) continue;
                            double delta = 0.0;
                            for (int i = 0; i <= n_plus_1; ++i) {
                                const std::int64_t a = wrap_index(m0 + i * t0, N);
                                const std::int64_t b = wrap_index(m1 + i * t1, N);
                                delta += binom[std::size_t(i)] * signal.samples[std::size_t(a + N * b)];
                            }
                            if (is_inf(p))
                                acc = std::max(acc, std::abs(delta));
                            else
                                acc += std::pow(std::abs(delta), p);
                            ++count;
                        }
                    if (count == 0) continue;
                    const double norm = is_inf(p) ? acc : std::pow(acc / double(count), 1.0 / p);
                    best = std::max(best, norm);
                }
            }
        }
        out.push_back(best);
    }
    return out;
}

// ── local polynomials ───────────────────────────────────────────────────────

namespace {

std::vector<std::array<int, 2>> monomials(int d, int degree) {
    std::vector<std::array<int, 2>> alphas;
    if (d == 1) {
        for (int a = 0; a <= degree; ++a) alphas.push_back({a, 0});
    } else {
        for (int total = 0; total <= degree; ++total)
            for (int a0 = total; a0 >= 0; --a0) alphas.push_back({a0, total - a0});
    }
    return alphas;
}

}  // namespace

std::vector<double> LocalPolynomial::coefficients() const {
    std::vector<double> out(derivs.size());
    for (std::size_t t = 0; t < derivs.size(); ++t)
        out[t] = derivs[t] / factorial(alphas[t][0] + alphas[t][1]);
    return out;
}

double LocalPolynomial::evaluate(const Point& x) const {
    const double dx0 = circ_delta(x[0], x0[0]);
    const double dx1 = (d == 2) ? circ_delta(x[1], x0[1]) : 0.0;
    double v = 0.0;
    for (std::size_t t = 0; t < derivs.size(); ++t) {
        const int a0 = alphas[t][0], a1 = alphas[t][1];
        v += derivs[t] / (factorial(a0) * factorial(a1)) * std::pow(dx0, a0) * std::pow(dx1, a1);
    }
    return v;
}

LocalPolynomial best_polynomial(const Signal& signal, const Point& x0, int j, int degree,
                                double p) {
    check_signal(signal);
    check_index(p, "p");
    if (degree < 0) fail(ErrorKind::config, "OutOfDomain", "best_polynomial: degree must be >= 0");
    if (j < 0) fail(ErrorKind::config, "OutOfDomain", "best_polynomial: scale must be >= 0");

    const std::int64_t N = std::int64_t(1) << signal.J;
    const double radius = pow2(-j);
    const auto alphas = monomials(signal.d, degree);
    const std::size_t n_basis = alphas.size();

    // Collect ball points with scaled offsets u = (x − x0)·2^j ∈ [−1, 1]^d.
    std::vector<double> u0, u1, fvals;
    if (signal.d == 1) {
        for (std::int64_t m : ball_indices(x0[0], N, radius)) {
            u0.push_back(circ_delta(double(m) / double(N), x0[0]) / radius);
            u1.push_back(0.0);
            fvals.push_back(signal.samples[std::size_t(m)]);
        }
    } else {
        for (std::int64_t m0 : ball_indices(x0[0], N, radius))
            for (std::int64_t m1 : ball_indices(x0[1], N, radius)) {
                u0.push_back(circ_delta(double(m0) / double(N), x0[0]) / radius);
                u1.push_back(circ_delta(double(m1) / double(N), x0[1]) / radius);
                fvals.push_back(signal.samples[std::size_t(m0 + N * m1)]);
            }
    }
    const std::size_t n_pts = fvals.size();
    if (n_pts < 8 * std::size_t(degree + 1))
        fail(ErrorKind::precondition, "ResolutionError",
             "best_polynomial: ball at scale " + std::to_string(j) + " holds " +
                 std::to_string(n_pts) + " samples; need >= " + std::to_string(8 * (degree + 1)));

    Eigen::MatrixXd A(n_pts, n_basis);
    Eigen::VectorXd y(n_pts);
    for (std::size_t i = 0; i < n_pts; ++i) {
        for (std::size_t t = 0; t < n_basis; ++t)
            A(i, t) = std::pow(u0[i], alphas[t][0]) * std::pow(u1[i], alphas[t][1]);
        y(i) = fvals[i];
    }

    LocalPolynomial poly;
    poly.x0 = x0;
    poly.d = signal.d;
    poly.degree = degree;
    poly.alphas = alphas;

    double p_eff = p;
    if (p == 1.0 || is_inf(p)) {
        p_eff = 2.0;
        poly.note = "p = " + std::string(is_inf(p) ? "inf" : "1") +
                    " approximated by the least-squares fit (p = 2)";
    }

    Eigen::VectorXd b = A.colPivHouseholderQr().solve(y);
    if (p_eff != 2.0) {
        // IRLS for 1 < p < ∞: weights |r|^{p−2}, damped and floored for stability.
        Eigen::VectorXd prev = b;
        for (int round = 0; round < 20; ++round) {
            Eigen::VectorXd r = y - A * b;
            const double scale = std::max(1e-12, r.cwiseAbs().maxCoeff());
            Eigen::VectorXd w(n_pts);
            for (std::size_t i = 0; i < n_pts; ++i)
                w(i) = std::pow(std::max(std::abs(r(i)), 1e-6 * scale), (p_eff - 2.0) / 2.0);
            Eigen::MatrixXd Aw = w.asDiagonal() * A;
            Eigen::VectorXd yw = w.asDiagonal() * y;
            b = Aw.colPivHouseholderQr().solve(yw);
            if ((b - prev).cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + b.cwiseAbs().maxCoeff())) break;
            prev = b;
        }
    }

    // Derivative data: P(x) = Σ b_α u^α with u = (x−x0)/2^{−j} ⇒ D^α P(x0) = b_α·α!·2^{j|α|}.
    poly.derivs.resize(n_basis);
    for (std::size_t t = 0; t < n_basis; ++t) {
        const int a0 = alphas[t][0], a1 = alphas[t][1];
        poly.derivs[t] = b(t) * factorial(a0) * factorial(a1) * pow2(double(j) * (a0 + a1));
    }

    Eigen::VectorXd r = y - A * b;
    if (is_inf(p)) {
        poly.residual = r.cwiseAbs().maxCoeff();
    } else {
        double acc = 0.0;
        for (std::size_t i = 0; i < n_pts; ++i) acc += std::pow(std::abs(r(i)), p == 1.0 ? 1.0 : p);
        poly.residual = std::pow(acc / double(n_pts), 1.0 / (p == 1.0 ? 1.0 : p));
    }
    return poly;
}

// ── direct membership ───────────────────────────────────────────────────────

namespace {

/// |log₂(2^{−jd/p}·σ_j⁻¹)| — the log-correction denominator at scale j.
double log_weight_denominator(const AdmissibleSequence& sigma, int j, int d, double p) {
    return std::abs(-double(j) * d * inv_index(p) - sigma.log2_value(std::size_t(j)));
}

void check_log_corrected_preconditions(const AdmissibleSequence& sigma, int d, double p,
                                       std::size_t boyd_depth) {
    // inf_k σ_{k+1}/σ_k > 2^{−d/p}
    double min_step = kInf;
    for (std::size_t k = 0; k < 64; ++k)
        min_step = std::min(min_step, sigma.log2_value(k + 1) - sigma.log2_value(k));
    const double bound = -double(d) * inv_index(p);
    if (!(min_step > bound))
        fail(ErrorKind::precondition, "IndexConditionViolated",
             "log-corrected weight needs inf σ_{k+1}/σ_k > 2^{-d/p}; got log2 step " +
                 std::to_string(min_step) + " vs " + std::to_string(bound));
    // 2^{−jd/p}·σ_j⁻¹ → 0, i.e. the lower index of σ exceeds −d/p.
    const BoydIndices est = boyd_indices(sigma, std::max<std::size_t>(boyd_depth, 16));
    if (!(est.lower > bound))
        fail(ErrorKind::precondition, "IndexConditionViolated",
             "log-corrected weight needs lower index of sigma > -d/p; estimate " +
                 std::to_string(est.lower));
}

}  // namespace

MembershipResult direct_membership(const Signal& signal, const Point& x0,
                                   const AdmissibleSequence& sigma, double p, double q,
                                   const DirectOptions& options) {
    check_signal(signal);
    check_index(p, "p");
    check_index(q, "q");

    const BoydIndices est = boyd_indices(sigma, options.boyd_depth);
    const int degree = std::max(0, int(std::floor(est.upper)));

    std::vector<int> scales = options.scales;
    if (scales.empty())
        for (int j = 2; j <= signal.J - 3; ++j) scales.push_back(j);
    if (options.log_corrected) {
        check_log_corrected_preconditions(sigma, signal.d, p, options.boyd_depth);
        std::vector<int> kept;
        for (int j : scales)
            if (log_weight_denominator(sigma, j, signal.d, p) >= 0.5) kept.push_back(j);
        scales = std::move(kept);
    }
    const std::int64_t N = std::int64_t(1) << signal.J;
    std::vector<std::size_t> counts;
    {
        // Clip scales whose ball cannot support the degree-n fit.
        const std::size_t need = 8 * std::size_t(degree + 1);
        std::vector<int> kept;
        for (int j : scales) {
            const std::size_t per_axis = ball_indices(wrap_unit(x0[0]), N, pow2(-j)).size();
            const std::size_t count =
                signal.d == 1 ? per_axis
                              : per_axis * ball_indices(wrap_unit(x0[1]), N, pow2(-j)).size();
            if (count >= need) {
                kept.push_back(j);
                counts.push_back(count);
            }
        }
        scales = std::move(kept);
    }
    if (scales.size() < 4)
        fail(ErrorKind::precondition, "ResolutionError",
             "direct_membership: fewer than 4 usable scales");

    std::string fit_note;
    const double cells = pow2(double(signal.J * signal.d));
    std::vector<double> a(scales.size());
    for (std::size_t t = 0; t < scales.size(); ++t) {
        const int j = scales[t];
        const LocalPolynomial fit = best_polynomial(signal, x0, j, degree, p);
        if (fit_note.empty() && !fit.note.empty()) fit_note = fit.note;
        double w_log2 = sigma.log2_value(std::size_t(j)) + double(j) * signal.d * inv_index(p);
        double w = pow2(w_log2);
        if (options.log_corrected) w /= log_weight_denominator(sigma, j, signal.d, p);
        // Riemann-sum ball norm: the fit's mean-power misfit times (|ball|/N^d)^{1/p}.
        const double riemann =
            fit.residual * std::pow(double(counts[t]) / cells, inv_index(p));
        a[t] = w * riemann;
    }
    MembershipResult res = lq_surrogate(scales, a, q, options.surrogate);
    auto append_note = [&res](const std::string& extra) {
        res.note = res.note.empty() ? extra : res.note + "; " + extra;
    };
    if (!fit_note.empty()) append_note(fit_note);
    if (options.log_corrected) append_note("log-corrected weight");
    return res;
}

UniquePolynomialResult unique_polynomial(const Signal& signal, const Point& x0,
                                         const AdmissibleSequence& sigma, double p,
                                         std::size_t boyd_depth) {
    check_signal(signal);
    check_index(p, "p");
    const BoydIndices est = boyd_indices(sigma, boyd_depth);
    const int n = int(std::floor(est.upper));
    if (n < 0 || !(double(n) < est.lower))
        fail(ErrorKind::precondition, "IndexConditionViolated",
             "unique_polynomial needs 0 <= floor(upper) < lower index; estimates (" +
                 std::to_string(est.lower) + ", " + std::to_string(est.upper) + ")");

    // Finest scale whose ball keeps >= 8(n+1) samples, then the three above it.
    int j_hi = signal.J - 3;
    const std::int64_t N = std::int64_t(1) << signal.J;
    auto ball_count = [&](int j) {
        double count = 1.0;
        for (int c = 0; c < signal.d; ++c)
            count *= double(ball_indices(x0[std::size_t(c)], N, pow2(-j)).size());
        return count;
    };
    while (j_hi >= 1 && ball_count(j_hi) < 8.0 * double(n + 1)) --j_hi;
    if (j_hi - 3 < 1)
        fail(ErrorKind::precondition, "ResolutionError",
             "unique_polynomial: not enough resolution for four fit scales");

    std::vector<LocalPolynomial> fits;
    for (int j = j_hi - 3; j <= j_hi; ++j) fits.push_back(best_polynomial(signal, x0, j, n, p));

    UniquePolynomialResult out;
    out.polynomial = fits.back();
    const std::size_t n_basis = fits.back().derivs.size();
    double defect = 0.0;
    bool settled = true;
    for (std::size_t t = 0; t < n_basis; ++t) {
        const double v0 = fits[1].derivs[t], v1 = fits[2].derivs[t], v2 = fits[3].derivs[t];
        const double scale = std::max({1.0, std::abs(v0), std::abs(v1), std::abs(v2)});
        const double d2 = v2 - 2.0 * v1 + v0;
        double extrapolated = v2;
        if (std::abs(d2) > 1e-13 * scale) {
            const double aitken = v2 - (v2 - v1) * (v2 - v1) / d2;
            // Only trust the acceleration when the steps actually contract.
            if (std::abs(v2 - v1) < std::abs(v1 - v0)) extrapolated = aitken;
        }
        out.polynomial.derivs[t] = extrapolated;
        defect = std::max(defect, std::abs(v2 - v1) / scale);
        if (std::abs(v2 - v1) > 0.9 * std::abs(v1 - v0) + 1e-12 * scale) settled = false;
    }
    out.cauchy_defect = defect;
    out.inconclusive = !settled;
    return out;
}

// ── leader-side criteria ────────────────────────────────────────────────────

namespace {

std::vector<int> verdict_scales(const LeaderPyramid& lp) {
    // Reported range minus the two coarsest (constant-dominated) scales.
    std::vector<int> scales;
    for (int j = 2; j <= lp.max_scale(); ++j) scales.push_back(j);
    return scales;
}

}  // namespace

MembershipResult leader_criterion(const LeaderPyramid& lp, const Point& x0,
                                  const AdmissibleSequence& sigma, double q,
                                  const SurrogateOptions& options) {
    check_index(q, "q");
    const std::vector<int> scales = verdict_scales(lp);
    if (scales.size() < 6)
        fail(ErrorKind::precondition, "ResolutionError",
             "leader_criterion: need >= 6 usable scales after the guard band, got " +
                 std::to_string(scales.size()));
    std::vector<double> a(scales.size());
    for (std::size_t t = 0; t < scales.size(); ++t)
        a[t] = pow2(sigma.log2_value(std::size_t(scales[t]))) * local_leader(lp, x0, scales[t]);
    return lq_surrogate(scales, a, q, options);
}

MembershipResult log_corrected_criterion(const LeaderPyramid& lp, const Point& x0,
                                         const AdmissibleSequence& sigma, double q,
                                         const SurrogateOptions& options) {
    check_index(q, "q");
    check_log_corrected_preconditions(sigma, lp.d, lp.p, 64);
    std::vector<int> scales;
    for (int j : verdict_scales(lp))
        if (log_weight_denominator(sigma, j, lp.d, lp.p) >= 0.5) scales.push_back(j);
    if (scales.size() < 6)
        fail(ErrorKind::precondition, "ResolutionError",
             "log_corrected_criterion: need >= 6 usable scales, got " +
                 std::to_string(scales.size()));
    std::vector<double> a(scales.size());
    for (std::size_t t = 0; t < scales.size(); ++t) {
        const int j = scales[t];
        a[t] = pow2(sigma.log2_value(std::size_t(j))) /
               log_weight_denominator(sigma, j, lp.d, lp.p) * local_leader(lp, x0, j);
    }
    MembershipResult res = lq_surrogate(scales, a, q, options);
    res.note = res.note.empty() ? "log-corrected weight" : res.note + "; log-corrected weight";
    return res;
}

MembershipResult xu_check(const CoefficientPyramid& pyramid, const Point& x0, double eta,
                          double p, double q, double C_star, const SurrogateOptions& options) {
    pyramid.check();
    check_index(p, "p");
    check_index(q, "q");
    if (!(C_star > 0.0)) fail(ErrorKind::config, "OutOfDomain", "xu_check: C* must be > 0");

    std::vector<int> scales;
    for (int j = 2; j <= pyramid.J - 1; ++j) scales.push_back(j);
    if (scales.size() < 4)
        fail(ErrorKind::precondition, "ResolutionError", "xu_check: fewer than 4 usable scales");

    const int n_or = pyramid.orientations();
    std::vector<double> a(scales.size());
    for (std::size_t t = 0; t < scales.size(); ++t) {
        const int j = scales[t];
        const std::int64_t n = std::int64_t(1) << j;
        double acc = 0.0;
        // |k − 2^j·x0| < C*·2^j per axis equals the strict cone with aperture C*·2^j.
        for (const DyadicCube& cube : cone_cubes(x0, C_star * double(n), j, pyramid.d)) {
            const std::int64_t flat = cube.k[0] + ((pyramid.d == 2) ? n * cube.k[1] : 0);
            for (int i = 0; i < n_or; ++i) {
                const double v = std::abs(pyramid.detail[j][i][std::size_t(flat)]);
                acc = is_inf(p) ? std::max(acc, v) : acc + std::pow(v, p);
            }
        }
        const double norm = is_inf(p) ? acc : std::pow(acc, 1.0 / p);
        a[t] = pow2((eta - pyramid.d * inv_index(p)) * double(j)) * norm;
    }
    return lq_surrogate(scales, a, q, options);
}

// ── norms ───────────────────────────────────────────────────────────────────

namespace {

/// ℓ^r aggregation of one scale's nonnegative entries (max for r = ∞).
double scale_aggregate(const std::vector<double>& entries, double r) {
    if (is_inf(r)) {
        double m = 0.0;
        for (double v : entries) m = std::max(m, v);
        return m;
    }
    double acc = 0.0;
    for (double v : entries) acc += std::pow(v, r);
    return std::pow(acc, 1.0 / r);
}

/// ℓ^q aggregation across scales.
double across_scales(const std::vector<double>& terms, double q) {
    if (is_inf(q)) {
        double m = 0.0;
        for (double v : terms) m = std::max(m, v);
        return m;
    }
    double acc = 0.0;
    for (double v : terms) acc += std::pow(v, q);
    return std::pow(acc, 1.0 / q);
}

}  // namespace

double oscillation_norm(const CoefficientPyramid& pyramid, const AdmissibleSequence& sigma,
                        double p, double r, double q, int guard) {
    check_index(r, "r");
    check_index(q, "q");
    const LeaderPyramid lp = leader_pyramid(pyramid, p, guard);
    std::vector<double> terms;
    terms.reserve(std::size_t(lp.max_scale()) + 1);
    for (int j = 0; j <= lp.max_scale(); ++j) {
        const double w = pow2(sigma.log2_value(std::size_t(j)) - double(j) * pyramid.d * inv_index(r));
        std::vector<double> entries(lp.values[std::size_t(j)].size());
        for (std::size_t t = 0; t < entries.size(); ++t)
            entries[t] = w * lp.values[std::size_t(j)][t];
        terms.push_back(scale_aggregate(entries, r));
    }
    return across_scales(terms, q) + std::abs(pyramid.coarse[0]);
}

std::vector<double> besov_scale_terms(const CoefficientPyramid& pyramid,
                                      const AdmissibleSequence& sigma, double r) {
    pyramid.check();
    check_index(r, "r");
    std::vector<double> terms(std::size_t(pyramid.J), 0.0);
    const int n_or = pyramid.orientations();
    for (int j = 0; j < pyramid.J; ++j) {
        const double w = pow2(sigma.log2_value(std::size_t(j)) - double(j) * pyramid.d * inv_index(r));
        double agg = 0.0;
        for (int i = 0; i < n_or; ++i)
            for (double c : pyramid.detail[j][i]) {
                const double v = std::abs(c);
                agg = is_inf(r) ? std::max(agg, v) : agg + std::pow(v, r);
            }
        terms[std::size_t(j)] = w * (is_inf(r) ? agg : std::pow(agg, 1.0 / r));
    }
    return terms;
}

double besov_norm(const CoefficientPyramid& pyramid, const AdmissibleSequence& sigma, double r,
                  double q, int guard) {
    check_index(q, "q");
    if (guard < 0 || guard > pyramid.J - 1)
        fail(ErrorKind::precondition, "ResolutionError", "besov_norm: guard leaves no scales");
    std::vector<double> terms = besov_scale_terms(pyramid, sigma, r);
    terms.resize(std::size_t(pyramid.J - guard));  // same trimmed window as the leader norms
    return across_scales(terms, q) + std::abs(pyramid.coarse[0]);
}

}  // namespace leaderscope
