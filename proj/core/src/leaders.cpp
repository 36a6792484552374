#include "leaderscope/leaders.hpp"

#include <algorithm>
#include <cmath>

namespace leaderscope {

namespace {

double abs_pow(double v, double p) { return std::pow(std::abs(v), p); }

}  // namespace

LeaderPyramid leader_pyramid(const CoefficientPyramid& pyramid, double p, int guard) {
    pyramid.check();
    check_index(p, "p");
    if (pyramid.J < 1)
        fail(ErrorKind::precondition, "ResolutionError", "leader_pyramid: pyramid has no detail scales");
    if (guard < 0) fail(ErrorKind::config, "OutOfDomain", "leader_pyramid: guard must be >= 0");

    LeaderPyramid lp;
    lp.d = pyramid.d;
    lp.p = p;
    lp.J_trunc = pyramid.J - 1;
    lp.guard = guard;
    if (lp.max_scale() < 0)
        fail(ErrorKind::precondition, "ResolutionError",
             "leader_pyramid: guard " + std::to_string(guard) + " leaves no reported scale (J_trunc = " +
                 std::to_string(lp.J_trunc) + ")");
    lp.values.resize(std::size_t(lp.max_scale()) + 1);

    const int d = pyramid.d;
    const int n_or = pyramid.orientations();
    const int J_tr = lp.J_trunc;

    if (is_inf(p)) {
        // d^∞ = max |c| over the subtree: a single running-max buffer suffices.
        std::vector<double> m;  // max over subtree of cube (j, k), current level
        for (int j = J_tr; j >= 0; --j) {
            const std::int64_t count = pyramid.cubes_per_scale(j);
            std::vector<double> next(std::size_t(count), 0.0);
            const std::int64_t child_n = (j < J_tr) ? (std::int64_t(1) << (j + 1)) : 0;
            for (std::int64_t flat = 0; flat < count; ++flat) {
                double own = 0.0;
                for (int i = 0; i < n_or; ++i)
                    own = std::max(own, std::abs(pyramid.detail[j][i][flat]));
                if (j < J_tr) {
                    if (d == 1) {
                        own = std::max({own, m[2 * flat], m[2 * flat + 1]});
                    } else {
                        const std::int64_t k0 = flat % (std::int64_t(1) << j);
                        const std::int64_t k1 = flat / (std::int64_t(1) << j);
                        for (int c0 = 0; c0 < 2; ++c0)
                            for (int c1 = 0; c1 < 2; ++c1)
                                own = std::max(own, m[(2 * k0 + c0) + child_n * (2 * k1 + c1)]);
                    }
                }
                next[flat] = own;
            }
            if (j <= lp.max_scale()) lp.values[j] = next;
            m = std::move(next);
        }
        return lp;
    }

    // Finite p: per-depth slice sums A[t][k] = Σ_{λ' ⊆ (j,k), scale j+t} |c_{λ'}|^p.
    std::vector<std::vector<double>> slices;  // slices[t][flat] at the current level
    for (int j = J_tr; j >= 0; --j) {
        const std::int64_t count = pyramid.cubes_per_scale(j);
        std::vector<std::vector<double>> next(std::size_t(J_tr - j) + 1);
        next[0].assign(std::size_t(count), 0.0);
        for (std::int64_t flat = 0; flat < count; ++flat) {
            double own = 0.0;
            for (int i = 0; i < n_or; ++i) own += abs_pow(pyramid.detail[j][i][flat], p);
            next[0][flat] = own;
        }
        for (std::size_t t = 0; t + 1 < next.size(); ++t) {
            next[t + 1].assign(std::size_t(count), 0.0);
            if (d == 1) {
                for (std::int64_t flat = 0; flat < count; ++flat)
                    next[t + 1][flat] = slices[t][2 * flat] + slices[t][2 * flat + 1];
            } else {
                const std::int64_t n = std::int64_t(1) << j;
                const std::int64_t child_n = 2 * n;
                for (std::int64_t flat = 0; flat < count; ++flat) {
                    const std::int64_t k0 = flat % n;
                    const std::int64_t k1 = flat / n;
                    double s = 0.0;
                    for (int c0 = 0; c0 < 2; ++c0)
                        for (int c1 = 0; c1 < 2; ++c1)
                            s += slices[t][(2 * k0 + c0) + child_n * (2 * k1 + c1)];
                    next[t + 1][flat] = s;
                }
            }
        }
        if (j <= lp.max_scale()) {
            auto& out = lp.values[j];
            out.assign(std::size_t(count), 0.0);
            for (std::int64_t flat = 0; flat < count; ++flat) {
                double best = 0.0;
                for (std::size_t t = 0; t < next.size(); ++t)
                    best = std::max(best, pow2(-double(t) * d) * next[t][flat]);
                out[flat] = std::pow(best, 1.0 / p);
            }
        }
        slices = std::move(next);
    }
    return lp;
}

double p_leader_bruteforce(const CoefficientPyramid& pyramid, double p, const DyadicCube& cube) {
    pyramid.check();
    check_index(p, "p");
    DyadicCube base = cube;
    base.d = pyramid.d;
    check_cube(base);
    if (base.j >= pyramid.J)
        fail(ErrorKind::config, "OutOfDomain", "p_leader_bruteforce: cube below the finest scale");

    const int J_tr = pyramid.J - 1;
    const int n_or = pyramid.orientations();
    double best = 0.0;
    for (int jp = base.j; jp <= J_tr; ++jp) {
        const int shift = jp - base.j;
        double slice = 0.0;
        if (pyramid.d == 1) {
            for (std::int64_t k = base.k[0] << shift; k < ((base.k[0] + 1) << shift); ++k)
                for (int i = 0; i < n_or; ++i) {
                    const double v = std::abs(pyramid.detail[jp][i][k]);
                    slice = is_inf(p) ? std::max(slice, v) : slice + std::pow(v, p);
                }
        } else {
            const std::int64_t n = std::int64_t(1) << jp;
            for (std::int64_t k0 = base.k[0] << shift; k0 < ((base.k[0] + 1) << shift); ++k0)
                for (std::int64_t k1 = base.k[1] << shift; k1 < ((base.k[1] + 1) << shift); ++k1)
                    for (int i = 0; i < n_or; ++i) {
                        const double v = std::abs(pyramid.detail[jp][i][k0 + n * k1]);
                        slice = is_inf(p) ? std::max(slice, v) : slice + std::pow(v, p);
                    }
        }
        if (is_inf(p))
            best = std::max(best, slice);
        else
            best = std::max(best, pow2(double(base.j - jp) * pyramid.d) * slice);
    }
    return is_inf(p) ? best : std::pow(best, 1.0 / p);
}

double local_leader(const LeaderPyramid& lp, const Point& x0, int j) {
    if (j < 0 || j > lp.max_scale())
        fail(ErrorKind::precondition, "ResolutionError",
             "local_leader: scale " + std::to_string(j) + " outside the reported range [0, " +
                 std::to_string(lp.max_scale()) + "]");
    const DyadicCube center = cube_containing(x0, j, lp.d);
    double best = 0.0;
    const std::int64_t n = scale_size(j);
    for (const DyadicCube& nb : adjacent_cubes(center)) {
        const std::int64_t flat = nb.k[0] + ((lp.d == 2) ? n * nb.k[1] : 0);
        best = std::max(best, lp.values[j][std::size_t(flat)]);
    }
    return best;
}

std::vector<double> cone_coefficient_norms(const CoefficientPyramid& pyramid, const Point& x0,
                                           double r, double p) {
    pyramid.check();
    check_index(p, "p");
    std::vector<double> out(std::size_t(pyramid.J), 0.0);
    const int n_or = pyramid.orientations();
    for (int j = 0; j < pyramid.J; ++j) {
        const std::int64_t n = std::int64_t(1) << j;
        double acc = 0.0;
        for (const DyadicCube& cube : cone_cubes(x0, r, j, pyramid.d)) {
            const std::int64_t flat = cube.k[0] + ((pyramid.d == 2) ? n * cube.k[1] : 0);
            for (int i = 0; i < n_or; ++i) {
                const double v = std::abs(pyramid.detail[j][i][flat]);
                acc = is_inf(p) ? std::max(acc, v) : acc + std::pow(v, p);
            }
        }
        out[j] = is_inf(p) ? acc : std::pow(acc, 1.0 / p);
    }
    return out;
}

}  // namespace leaderscope
