#include "leaderscope/synth.hpp"

#include <cmath>
#include <random>

#include "leaderscope/dyadic.hpp"

namespace leaderscope {

int m0_minimal(double alpha, double r, double zeta_h, double eps0, int d) {
    check_index(r, "r");
    if (!(alpha >= 1.0)) fail(ErrorKind::config, "OutOfDomain", "m0_minimal: alpha must be >= 1");
    if (d != 1 && d != 2) fail(ErrorKind::config, "OutOfDomain", "m0_minimal: d must be 1 or 2");
    const double inv_r = inv_index(r);
    const double inv_alpha = is_inf(alpha) ? 0.0 : 1.0 / alpha;
    const double bracket = zeta_h - eps0 - double(d) * inv_alpha * inv_r + double(d) * inv_r;
    if (!(bracket > 0.0))
        fail(ErrorKind::precondition, "NoValidM0",
             "m0_minimal: zeta(h) - eps0 must exceed d/(alpha*r) - d/r; bracket = " +
                 std::to_string(bracket));
    for (int m = 0; m <= 62 / d; ++m) {
        const double rhs = is_inf(alpha) ? kInf : bracket * pow2(double(d * m)) * alpha;
        if (double(d) < rhs) return m;
    }
    fail(ErrorKind::precondition, "NoValidM0", "m0_minimal: no m0 up to the scale cap satisfies the bound");
}

CoefficientPyramid gen_saturating(const SaturatingSpec& spec) {
    check_index(spec.r, "r");
    check_index(spec.s, "s");
    if (spec.d != 1 && spec.d != 2)
        fail(ErrorKind::config, "OutOfDomain", "gen_saturating: d must be 1 or 2");
    if (spec.m0 < 0) fail(ErrorKind::config, "OutOfDomain", "gen_saturating: m0 must be >= 0");
    const std::int64_t subcubes = std::int64_t(1) << (spec.d * spec.m0);
    if (spec.n < 1 || spec.n > subcubes)
        fail(ErrorKind::config, "OutOfDomain",
             "gen_saturating: subcube selector must lie in [1, 2^(d*m0)]");
    if (spec.J < spec.m0 + 1)
        fail(ErrorKind::precondition, "ResolutionError",
             "gen_saturating: need J >= m0 + 1 so at least one scale is populated");

    // Detail scales 0…J inclusive; the pyramid's own J field is one above the
    // finest populated coefficient scale.
    CoefficientPyramid pyramid = CoefficientPyramid::zeros(spec.d, spec.J + 1);

    const double inv_r = inv_index(spec.r);
    const double a0 = spec.a0();
    const std::int64_t sel = spec.n - 1;
    const int orientation = int(sel >> (spec.d * spec.m0)) + 1;  // 1 under the invariant
    const std::int64_t offset_idx = sel & (subcubes - 1);
    std::int64_t off[2] = {0, 0};
    if (spec.d == 1) {
        off[0] = offset_idx;
    } else {  // axis-0-major lexicographic offsets
        off[0] = offset_idx >> spec.m0;
        off[1] = offset_idx & ((std::int64_t(1) << spec.m0) - 1);
    }

    for (int j = 1; j <= spec.J - spec.m0; ++j) {
        const std::int64_t side = std::int64_t(1) << j;
        const std::int64_t cubes = std::int64_t(1) << (spec.d * j);
        const int jt = j + spec.m0;
        const std::int64_t side_t = std::int64_t(1) << jt;
        auto& target = pyramid.detail[std::size_t(jt)][std::size_t(orientation - 1)];
        const double base_log2 =
            double(j) * spec.d * inv_r - spec.sigma.log2_value(std::size_t(j));
        for (std::int64_t flat = 0; flat < cubes; ++flat) {
            DyadicCube parent;
            parent.j = j;
            parent.d = spec.d;
            parent.k[0] = flat % side;
            parent.k[1] = (spec.d == 2) ? flat / side : 0;
            const int l = irreducible_scale(parent);
            const double value =
                std::pow(double(j), -a0) * pow2(base_log2 - double(l) * spec.d * inv_r);
            const std::int64_t k0 = parent.k[0] * (std::int64_t(1) << spec.m0) + off[0];
            const std::int64_t k1 = parent.k[1] * (std::int64_t(1) << spec.m0) + off[1];
            target[std::size_t(k0 + ((spec.d == 2) ? side_t * k1 : 0))] = value;
        }
    }
    return pyramid;
}

ConeFunction gen_cone(const Point& x0, int n, const RatioFunction& rf, double s, int J) {
    check_index(s, "s");
    if (n < 1) fail(ErrorKind::config, "OutOfDomain", "gen_cone: n must be >= 1");
    if (J < 1) fail(ErrorKind::config, "OutOfDomain", "gen_cone: J must be >= 1");

    ConeFunction out;
    out.x0 = x0;
    out.h = rf.h_min() + 1.0 / double(n);
    out.pyramid = CoefficientPyramid::zeros(rf.d(), J);

    const AdmissibleSequence gamma = rf.family().at(out.h);
    const double exponent = 1.0 + inv_index(s);
    out.theta.resize(std::size_t(J));
    for (int j = 0; j < J; ++j) {
        const double theta =
            pow2(-gamma.log2_value(std::size_t(j))) / std::pow(1.0 + double(j), exponent);
        out.theta[std::size_t(j)] = theta;
        const DyadicCube chain = cube_containing(x0, j, rf.d());
        const std::int64_t side = std::int64_t(1) << j;
        const std::int64_t flat = chain.k[0] + ((rf.d() == 2) ? side * chain.k[1] : 0);
        out.pyramid.detail[std::size_t(j)][0][std::size_t(flat)] = theta;
    }
    out.dinf.resize(std::size_t(J));
    double running = 0.0;
    for (int j = J - 1; j >= 0; --j) {
        running = std::max(running, out.theta[std::size_t(j)]);
        out.dinf[std::size_t(j)] = running;
    }
    return out;
}

namespace {

/// C^∞ ramp: 0 for t ≤ 0, 1 for t ≥ 1 (normalized exponential bump).
double smooth_ramp(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

}  // namespace

Signal gen_cusp(double x0, double u, std::int64_t N) {
    if (N < 8 || (N & (N - 1)) != 0)
        fail(ErrorKind::config, "OutOfDomain", "gen_cusp: N must be a power of 2, at least 8");
    int J = 0;
    while ((std::int64_t(1) << J) < N) ++J;

    Signal sig;
    sig.d = 1;
    sig.J = J;
    sig.samples.resize(std::size_t(N));

    // Blend dist^u to the constant plateau 0.45^u between dist 0.25 and 0.45;
    // f = (dist^u − plateau)·w + plateau, with w ≡ 1 near the singularity.
    const double plateau = std::pow(0.45, u);
    for (std::int64_t m = 0; m < N; ++m) {
        double t = double(m) / double(N) - x0;
        t -= std::floor(t);
        const double dist = std::min(t, 1.0 - t);
        double powu;
        if (dist == 0.0)
            powu = (u == 0.0) ? 1.0 : ((u > 0.0) ? 0.0 : std::pow(0.5 / double(N), u));
        else
            powu = std::pow(dist, u);
        const double w = 1.0 - smooth_ramp((dist - 0.25) / 0.20);
        sig.samples[std::size_t(m)] = (powu - plateau) * w + plateau;
    }
    return sig;
}

CoefficientPyramid gen_random_besov(const AdmissibleSequence& sigma, double r, double s, int J,
                                    std::uint64_t seed, int d) {
    check_index(r, "r");
    check_index(s, "s");
    if (d != 1 && d != 2)
        fail(ErrorKind::config, "OutOfDomain", "gen_random_besov: d must be 1 or 2");
    if (J < 1) fail(ErrorKind::config, "OutOfDomain", "gen_random_besov: J must be >= 1");
    const BoydIndices est = boyd_indices(sigma, 64);
    if (!(est.lower > 0.0))
        fail(ErrorKind::precondition, "IndexConditionViolated",
             "gen_random_besov: the lower index of sigma must be positive; estimate " +
                 std::to_string(est.lower));

    CoefficientPyramid pyramid = CoefficientPyramid::zeros(d, J);
    std::mt19937_64 rng(seed);
    const double inv_r = inv_index(r);
    const double tail_exp = inv_index(s) + 0.01;
    const int n_or = pyramid.orientations();
    for (int j = 0; j < J; ++j) {
        const double count = double(n_or) * double(std::int64_t(1) << (d * j));
        const double amp_log2 = -sigma.log2_value(std::size_t(j)) + double(j) * d * inv_r -
                                inv_r * std::log2(count);
        const double amp = pow2(amp_log2) / std::pow(1.0 + double(j), tail_exp);
        for (int i = 0; i < n_or; ++i)
            for (double& c : pyramid.detail[std::size_t(j)][std::size_t(i)]) {
                const std::uint64_t x = rng();
                const double sign = (x & 1u) ? 1.0 : -1.0;
                const double mag = 0.5 + 0.5 * (double(x >> 11) * 0x1p-53);
                c = amp * sign * mag;
            }
    }
    return pyramid;
}

}  // namespace leaderscope
