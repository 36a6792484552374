#include "leaderscope/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace leaderscope {

double pointwise_exponent(const LeaderPyramid& leaders, const Point& x0,
                          const AdmissibleFamily& family, const ExponentOptions& options) {
    if (!(options.tol > 0.0))
        fail(ErrorKind::config, "OutOfDomain", "pointwise_exponent: tol must be > 0");

    std::vector<int> scales;
    for (int j = 2; j <= leaders.max_scale(); ++j) scales.push_back(j);
    if (scales.size() < 4)
        fail(ErrorKind::precondition, "ResolutionError",
             "pointwise_exponent: need >= 4 usable scales, got " + std::to_string(scales.size()));

    std::vector<double> local(scales.size());
    for (std::size_t t = 0; t < scales.size(); ++t)
        local[t] = local_leader(leaders, x0, scales[t]);

    const auto accepted = [&](double h) {
        const AdmissibleSequence gamma = family.at(h);
        std::vector<double> a(scales.size());
        for (std::size_t t = 0; t < scales.size(); ++t)
            a[t] = pow2(gamma.log2_value(std::size_t(scales[t]))) * local[t];
        // Inconclusive counts as a rejection: the exponent is a supremum, so
        // only decisive boundedness may push it upward.
        return lq_surrogate(scales, a, kInf, options.surrogate).verdict == Verdict::member;
    };

    double lo = -double(leaders.d) * inv_index(leaders.p) + options.bracket_lo_eps;
    double hi = options.bracket_hi;
    if (!(lo < hi)) fail(ErrorKind::config, "OutOfDomain", "pointwise_exponent: empty bracket");
    if (!accepted(lo)) return lo;
    if (accepted(hi)) return hi;
    while (hi - lo > options.tol) {
        const double mid = 0.5 * (lo + hi);
        (accepted(mid) ? lo : hi) = mid;
    }
    return lo;
}

PredictedSpectrum predicted_spectrum(const RatioFunction& rf, std::size_t n_points) {
    if (n_points < 1) fail(ErrorKind::config, "OutOfDomain", "predicted_spectrum: need n_points >= 1");
    PredictedSpectrum out;
    out.h_hi = rf.h_star(1.0);  // ζ(h_hi) = 0
    if (is_inf(rf.r())) {
        out.h_lo = out.h_hi;
        out.points = {{out.h_hi, double(rf.d())}};
        return out;
    }
    out.h_lo = rf.h_min();  // ζ(h_lo) = −d/r
    const std::size_t n = std::max<std::size_t>(n_points, 2);
    out.points.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double frac = double(t) / double(n - 1);
        const double h = out.h_lo + frac * (out.h_hi - out.h_lo);
        double dim;
        if (t == 0)
            dim = 0.0;  // ζ(h_lo) = −d/r exactly, by construction of h_lo
        else if (t == n - 1)
            dim = double(rf.d());  // ζ(h_hi) = 0 exactly
        else
            dim = double(rf.d()) + rf.r() * rf.zeta(h);
        out.points[t] = {h, dim};
    }
    return out;
}

std::optional<double> dimension_upper_bound(const RatioFunction& rf, double h) {
    const double z = rf.zeta(h);
    if (is_inf(rf.r())) {
        if (z >= 0.0) return double(rf.d());
        return std::nullopt;  // the bound degenerates to −∞
    }
    return double(rf.d()) + rf.r() * z;
}

EmpiricalSpectrum empirical_spectrum(const LeaderPyramid& leaders,
                                     const std::vector<double>& h_grid,
                                     const AdmissibleFamily& binning,
                                     const EmpiricalOptions& options) {
    if (!(options.delta > 0.0))
        fail(ErrorKind::config, "OutOfDomain", "empirical_spectrum: delta must be > 0");
    if (options.min_points < 2)
        fail(ErrorKind::config, "OutOfDomain", "empirical_spectrum: min_points must be >= 2");
    if (h_grid.empty())
        fail(ErrorKind::config, "OutOfDomain", "empirical_spectrum: empty exponent grid");

    EmpiricalSpectrum out;
    out.h = h_grid;
    out.scales = options.scales;
    if (out.scales.empty())
        for (int j = 2; j <= leaders.max_scale(); ++j) out.scales.push_back(j);
    for (std::size_t s = 0; s < out.scales.size(); ++s) {
        const int j = out.scales[s];
        if (j < 0 || j > leaders.max_scale())
            fail(ErrorKind::config, "OutOfDomain",
                 "empirical_spectrum: scale " + std::to_string(j) + " outside the reported range");
        if (s > 0 && out.scales[s] <= out.scales[s - 1])
            fail(ErrorKind::config, "OutOfDomain", "empirical_spectrum: scales must be increasing");
    }

    // Sort each scale's leader values once; each bin becomes two binary searches.
    std::vector<std::vector<double>> sorted(out.scales.size());
    for (std::size_t s = 0; s < out.scales.size(); ++s) {
        sorted[s] = leaders.values[std::size_t(out.scales[s])];
        std::sort(sorted[s].begin(), sorted[s].end());
    }

    out.counts.assign(h_grid.size(), std::vector<std::int64_t>(out.scales.size(), 0));
    out.dimension.assign(h_grid.size(), std::nullopt);
    for (std::size_t t = 0; t < h_grid.size(); ++t) {
        const AdmissibleSequence upper = binning.at(h_grid[t] + options.delta);
        const AdmissibleSequence lower = binning.at(h_grid[t] - options.delta);
        std::vector<double> xs, ys;
        for (std::size_t s = 0; s < out.scales.size(); ++s) {
            const std::size_t j = std::size_t(out.scales[s]);
            const double lo = pow2(-upper.log2_value(j));  // slower decay ⇒ smaller value
            const double hi = pow2(-lower.log2_value(j));
            const auto& v = sorted[s];
            const auto it_lo = std::lower_bound(v.begin(), v.end(), lo);
            const auto it_hi = std::lower_bound(v.begin(), v.end(), hi);
            const std::int64_t count = it_hi - it_lo;
            out.counts[t][s] = count;
            if (count >= 1) {
                xs.push_back(double(out.scales[s]));
                ys.push_back(std::log2(double(count)));
            }
        }
        if (int(xs.size()) >= options.min_points) {
            const LineFit fit = fit_line(xs, ys);
            out.dimension[t] = fit.slope;
        }
    }
    return out;
}

StructureFunction structure_function(const LeaderPyramid& leaders, double moment,
                                     const std::vector<int>& scales) {
    if (!std::isfinite(moment))
        fail(ErrorKind::config, "OutOfDomain", "structure_function: moment must be finite");

    StructureFunction out;
    out.moment = moment;
    out.scales = scales;
    if (out.scales.empty())
        for (int j = 0; j <= leaders.max_scale(); ++j) out.scales.push_back(j);

    std::vector<double> xs;
    for (int j : out.scales) {
        if (j < 0 || j > leaders.max_scale())
            fail(ErrorKind::config, "OutOfDomain",
                 "structure_function: scale " + std::to_string(j) + " outside the reported range");
        double acc = 0.0;
        for (double v : leaders.values[std::size_t(j)])
            if (v > 0.0) acc += std::pow(v, moment);  // zero leaders carry no mass
        const double s = pow2(-double(j) * leaders.d) * acc;
        out.log2_values.push_back(std::log2(std::max(s, 1e-300)));
        xs.push_back(double(j));
    }
    if (xs.size() >= 2) out.fit = fit_line(xs, out.log2_values);
    return out;
}

}  // namespace leaderscope
