// Generators for functions with known regularity: subcube-depth search,
// saturating pyramids, single-chain cone functions, cusp signals, and random
// series with finite weighted-Besov norm.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "leaderscope/errors.hpp"
#include "leaderscope/leaders.hpp"
#include "leaderscope/spaces.hpp"
#include "leaderscope/spectrum.hpp"
#include "leaderscope/synth.hpp"
#include "leaderscope/wavelet.hpp"

#include "helpers.hpp"

using namespace leaderscope;

namespace {

/// Direct inequality scan: smallest m with d < (ζ − ε₀ − d/(αr) + d/r)·2^{dm}·α.
int m0_scan(double alpha, double r, double zeta_h, double eps0, int d) {
    const double inv_r = inv_index(r);
    const double inv_alpha = is_inf(alpha) ? 0.0 : 1.0 / alpha;
    const double bracket = zeta_h - eps0 - double(d) * inv_alpha * inv_r + double(d) * inv_r;
    for (int m = 0; m <= 62; ++m) {
        const double rhs =
            is_inf(alpha) ? (bracket > 0.0 ? kInf : -kInf) : bracket * pow2(double(d * m)) * alpha;
        if (double(d) < rhs) return m;
    }
    return -1;
}

/// Halving oracle for the irreducible scale of a cube.
int irreducible_scale_oracle(int j, std::int64_t k0, std::int64_t k1, int d) {
    while (j > 0 && k0 % 2 == 0 && (d == 1 || k1 % 2 == 0)) {
        k0 /= 2;
        k1 /= 2;
        --j;
    }
    return j;
}

/// Independent evaluator for the saturating pyramid: recomputes every planted
/// coefficient from the literal formula with plain std::pow arithmetic.
CoefficientPyramid saturating_oracle(const SaturatingSpec& spec) {
    auto pyr = CoefficientPyramid::zeros(spec.d, spec.J + 1);
    const double a0 = 1.0 + inv_index(spec.r) + inv_index(spec.s);
    const std::int64_t sub = std::int64_t(1) << spec.m0;
    const std::int64_t idx = spec.n - 1;
    const std::int64_t off0 = (spec.d == 2) ? (idx >> spec.m0) : idx;
    const std::int64_t off1 = (spec.d == 2) ? (idx & (sub - 1)) : 0;
    for (int j = 1; j <= spec.J - spec.m0; ++j) {
        const std::int64_t side = std::int64_t(1) << j;
        const std::int64_t side_t = std::int64_t(1) << (j + spec.m0);
        const double sigma_j = std::pow(2.0, spec.sigma.log2_value(std::size_t(j)));
        for (std::int64_t k1 = 0; k1 < ((spec.d == 2) ? side : 1); ++k1)
            for (std::int64_t k0 = 0; k0 < side; ++k0) {
                const int l = irreducible_scale_oracle(j, k0, k1, spec.d);
                const double c = std::pow(double(j), -a0) *
                                 std::pow(2.0, double(j * spec.d) * inv_index(spec.r)) *
                                 std::pow(2.0, -double(l * spec.d) * inv_index(spec.r)) / sigma_j;
                const std::int64_t t0 = k0 * sub + off0;
                const std::int64_t t1 = k1 * sub + off1;
                pyr.detail[std::size_t(j + spec.m0)][0]
                          [std::size_t(t0 + ((spec.d == 2) ? side_t * t1 : 0))] = c;
            }
    }
    return pyr;
}

std::vector<std::size_t> nonzero_positions(const std::vector<double>& plane) {
    std::vector<std::size_t> out;
    for (std::size_t t = 0; t < plane.size(); ++t)
        if (plane[t] != 0.0) out.push_back(t);
    return out;
}

}  // namespace

TEST_CASE("subcube depth matches a direct inequality scan") {
    // d=1, α=1, r=1, ζ=1, ε₀=0.1: the bracket is 1 − 0.1 − 1 + 1 = 0.9, and
    // 0.9·2^m first exceeds d = 1 at m = 1.
    CHECK(m0_minimal(1.0, 1.0, 1.0, 0.1, 1) == 1);
    CHECK(m0_minimal(1.0, 1.0, 1.0, 0.1, 1) == m0_scan(1.0, 1.0, 1.0, 0.1, 1));
    CHECK(m0_minimal(2.0, 2.0, 0.3, 0.01, 1) == m0_scan(2.0, 2.0, 0.3, 0.01, 1));
    CHECK(m0_minimal(1.0, 1.0, 0.05, 0.0, 1) == 5);  // 0.05·2^m > 1 first at m = 5
    CHECK(m0_minimal(1.0, 1.0, 0.3, 0.0, 2) == 2);   // 0.3·4^m > 2 first at m = 2
    CHECK(m0_minimal(kInf, 2.0, 0.2, 0.0, 1) == 0);  // infinite alpha satisfies at once

    for (double alpha : {1.0, 2.0, 4.0})
        for (double r : {1.0, 2.0, kInf})
            for (double zeta : {0.05, 0.3, 1.0})
                for (int d : {1, 2}) {
                    const double inv_r = inv_index(r);
                    const double b = zeta - double(d) * (1.0 / alpha) * inv_r + double(d) * inv_r;
                    if (!(b > 0.0)) {
                        CHECK_THROWS_AS(m0_minimal(alpha, r, zeta, 0.0, d), Error);
                    } else {
                        CHECK(m0_minimal(alpha, r, zeta, 0.0, d) == m0_scan(alpha, r, zeta, 0.0, d));
                    }
                }
}

TEST_CASE("subcube depth validates domain and precondition") {
    CHECK_THROWS_AS(m0_minimal(1.0, 1.0, 1.0, 10.0, 1), Error);  // bracket forced nonpositive
    CHECK_THROWS_AS(m0_minimal(0.5, 1.0, 1.0, 0.0, 1), Error);   // alpha < 1
    CHECK_THROWS_AS(m0_minimal(1.0, 0.5, 1.0, 0.0, 1), Error);   // r below 1
    CHECK_THROWS_AS(m0_minimal(1.0, 1.0, 1.0, 0.0, 3), Error);   // bad dimension
}

TEST_CASE("a0 combines the integrability and summability indices") {
    SaturatingSpec spec;
    spec.r = 1.0;
    spec.s = 1.0;
    CHECK(spec.a0() == 3.0);
    spec.r = 2.0;
    spec.s = 2.0;
    CHECK(spec.a0() == 2.0);
    spec.r = kInf;
    spec.s = kInf;
    CHECK(spec.a0() == 1.0);
}

TEST_CASE("saturating pyramid carries the literal coefficient in the first subcube") {
    SaturatingSpec spec;
    spec.sigma = AdmissibleSequence::power_log(0.6, 0.0);
    spec.r = 2.0;
    spec.s = 2.0;
    spec.m0 = 1;
    spec.n = 1;
    spec.J = 8;
    spec.d = 1;
    const auto pyr = gen_saturating(spec);
    // Parent (j=1, k=0) is reducible to scale 0, so its planted child at scale
    // 2 carries 1^{-2}·2^{1/2}·2^{0}·2^{-0.6} = 2^{-0.1}.
    CHECK(pyr.detail[2][0][0] == doctest::Approx(0.9330329915368074).epsilon(1e-12));
}

TEST_CASE("saturating pyramid equals an independent formula evaluator") {
    std::vector<SaturatingSpec> specs(3);
    specs[0].sigma = AdmissibleSequence::power_log(0.6, 0.0);
    specs[0].r = 2.0;
    specs[0].s = 2.0;
    specs[0].m0 = 1;
    specs[0].n = 1;
    specs[0].J = 9;
    specs[0].d = 1;
    specs[1].sigma = AdmissibleSequence::power_log(0.7, 1.0);
    specs[1].r = 4.0;
    specs[1].s = 2.0;
    specs[1].m0 = 2;
    specs[1].n = 3;
    specs[1].J = 9;
    specs[1].d = 1;
    specs[2].sigma = AdmissibleSequence::power_log(0.5, 0.0);
    specs[2].r = 2.0;
    specs[2].s = 4.0;
    specs[2].m0 = 1;
    specs[2].n = 3;
    specs[2].J = 6;
    specs[2].d = 2;
    for (const auto& spec : specs) {
        const auto got = gen_saturating(spec);
        const auto want = saturating_oracle(spec);
        REQUIRE(got.J == want.J);
        for (int j = 0; j < got.J; ++j)
            for (std::size_t i = 0; i < got.detail[std::size_t(j)].size(); ++i) {
                const auto& gp = got.detail[std::size_t(j)][i];
                const auto& wp = want.detail[std::size_t(j)][i];
                REQUIRE(gp.size() == wp.size());
                for (std::size_t t = 0; t < gp.size(); ++t)
                    CHECK(test_helpers::close_rel(gp[t], wp[t], 1e-12));
            }
    }
}

TEST_CASE("saturating per-scale norm terms track the designed power law") {
    SaturatingSpec spec;
    spec.sigma = AdmissibleSequence::power_log(0.6, 0.0);
    spec.r = 2.0;
    spec.s = 2.0;
    spec.m0 = 1;
    spec.n = 1;
    spec.J = 12;
    spec.d = 1;
    const auto pyr = gen_saturating(spec);
    const auto terms = besov_scale_terms(pyr, spec.sigma, spec.r);
    REQUIRE(int(terms.size()) == spec.J + 1);
    CHECK(terms[0] == 0.0);
    CHECK(terms[1] == 0.0);  // scales below m0+1 hold no coefficients
    const double a0 = spec.a0();
    // Closed form for d = 1: parents at scale j contribute
    //   term_{j+m0} = j^{-a0}·2^{m0(0.6-1/2)}·(1 + j/2)^{1/2}.
    for (int j = 1; j <= spec.J - spec.m0; ++j) {
        const double want = std::pow(double(j), -a0) * std::pow(2.0, 0.1 * spec.m0) *
                            std::sqrt(1.0 + double(j) / 2.0);
        CHECK(test_helpers::close_rel(terms[std::size_t(j + spec.m0)], want, 1e-10));
    }
    // Envelope: the ratio to j^{-a0+1/r} stays within a single factor-2 band.
    double lo = kInf, hi = 0.0;
    for (int j = 1; j <= spec.J - spec.m0; ++j) {
        const double ratio =
            terms[std::size_t(j + spec.m0)] / std::pow(double(j), -a0 + inv_index(spec.r));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(hi / lo < 2.0);
}

TEST_CASE("subcube selection is injective and leaves everything else zero") {
    SaturatingSpec spec;
    spec.sigma = AdmissibleSequence::power_log(0.5, 0.0);
    spec.r = 2.0;
    spec.s = 2.0;
    spec.m0 = 1;
    spec.J = 5;
    spec.d = 2;
    std::vector<std::vector<std::size_t>> seen;
    for (std::int64_t n = 1; n <= 4; ++n) {
        spec.n = n;
        const auto pyr = gen_saturating(spec);
        // Only orientation 1 is ever populated.
        for (int j = 0; j < pyr.J; ++j) {
            CHECK(nonzero_positions(pyr.detail[std::size_t(j)][1]).empty());
            CHECK(nonzero_positions(pyr.detail[std::size_t(j)][2]).empty());
        }
        // One planted child per parent cube at each populated scale.
        for (int j = 1; j <= spec.J - spec.m0; ++j) {
            const auto nz = nonzero_positions(pyr.detail[std::size_t(j + spec.m0)][0]);
            CHECK(nz.size() == (std::size_t(1) << (2 * j)));
        }
        seen.push_back(nonzero_positions(pyr.detail[2][0]));  // children of the scale-1 parents
    }
    for (std::size_t a = 0; a < seen.size(); ++a)
        for (std::size_t b = a + 1; b < seen.size(); ++b)
            for (std::size_t pos : seen[a])
                CHECK(std::find(seen[b].begin(), seen[b].end(), pos) == seen[b].end());
}

TEST_CASE("saturating generator validates its spec") {
    SaturatingSpec spec;
    spec.sigma = AdmissibleSequence::power_log(0.5, 0.0);
    spec.m0 = 1;
    spec.J = 1;  // needs J >= m0 + 1
    CHECK_THROWS_AS(gen_saturating(spec), Error);
    spec.J = 8;
    spec.n = 3;  // only 2 subcubes exist at m0 = 1, d = 1
    CHECK_THROWS_AS(gen_saturating(spec), Error);
    spec.n = 1;
    spec.d = 3;
    CHECK_THROWS_AS(gen_saturating(spec), Error);
    spec.d = 1;
    spec.m0 = -1;
    CHECK_THROWS_AS(gen_saturating(spec), Error);
}

TEST_CASE("cone function realizes the designed chain exponent and coefficients") {
    const AdmissibleSequence sigma = AdmissibleSequence::power_log(0.8, 0.0);
    const RatioFunction rf(sigma, AdmissibleFamily::canonical(kInf, kInf), 1, 2.0);
    const double s = 2.0;
    const int J = 10;
    const auto cone = gen_cone({0.3, 0.0}, 2, rf, s, J);
    CHECK(cone.h == doctest::Approx(0.8).epsilon(1e-6));  // h_min + 1/2 = 0.3 + 0.5
    REQUIRE(cone.theta.size() == std::size_t(J));
    for (int j = 0; j < J; ++j) {
        const double want = std::pow(2.0, -double(j) * cone.h) / std::pow(1.0 + double(j), 1.5);
        CHECK(test_helpers::close_rel(cone.theta[std::size_t(j)], want, 1e-12));
    }
}

TEST_CASE("cone pyramid is a single chain with exact sup leaders") {
    const AdmissibleSequence sigma = AdmissibleSequence::power_log(0.8, 0.0);
    const RatioFunction rf(sigma, AdmissibleFamily::canonical(kInf, kInf), 1, 2.0);
    const Point x0{0.3, 0.0};
    const auto cone = gen_cone(x0, 2, rf, 2.0, 10);
    for (int j = 0; j < cone.pyramid.J; ++j) {
        const auto nz = nonzero_positions(cone.pyramid.detail[std::size_t(j)][0]);
        REQUIRE(nz.size() == 1);
        CHECK(std::int64_t(nz[0]) == cube_containing(x0, j, 1).k[0]);
    }
    const auto lp = leader_pyramid(cone.pyramid, kInf, 0);
    for (int j = 0; j <= lp.max_scale(); ++j) {
        const auto cube = cube_containing(x0, j, 1);
        CHECK(lp.values[std::size_t(j)][std::size_t(cube.k[0])] == cone.dinf[std::size_t(j)]);
        CHECK(local_leader(lp, x0, j) == cone.dinf[std::size_t(j)]);
    }
    // dinf is the running sup of theta from the fine end.
    double running = 0.0;
    for (int j = cone.pyramid.J - 1; j >= 0; --j) {
        running = std::max(running, cone.theta[std::size_t(j)]);
        CHECK(cone.dinf[std::size_t(j)] == running);
    }
}

TEST_CASE("cone per-scale norm terms decay like the designed tail") {
    // With weight σ_j·2^{−jd/r} the single-chain scale terms collapse to
    // 2^{−j/n}/(1+j)^{1+1/s}, so the bound C_n/(1+j)^{1+1/s} holds with C_n = 1.
    const AdmissibleSequence sigma = AdmissibleSequence::power_log(0.8, 0.0);
    const RatioFunction rf(sigma, AdmissibleFamily::canonical(kInf, kInf), 1, 2.0);
    const double s = 2.0;
    const int n = 3;
    const auto cone = gen_cone({0.62, 0.0}, n, rf, s, 12);
    const auto terms = besov_scale_terms(cone.pyramid, sigma, 2.0);
    for (int j = 0; j < 12; ++j) {
        const double tail = std::pow(1.0 + double(j), 1.0 + inv_index(s));
        CHECK(test_helpers::close_rel(terms[std::size_t(j)] * tail,
                                      std::pow(2.0, -double(j) / double(n)), 1e-9));
        CHECK(terms[std::size_t(j)] <= 1.0 / tail * (1.0 + 1e-12));
    }
}

TEST_CASE("cone exponent follows the inverse ratio function") {
    // For σ ≡ 1 the ratio function is ζ(h) = h, so the chain exponent is
    // −d/r + 1/n and θ_j·(1+j)^{1+1/s} = 2^{−j·h} exactly.  The family index
    // p = 1 keeps the negative exponent inside the admissible range h > −d/p.
    const RatioFunction rf(AdmissibleSequence::power_log(0.0, 0.0),
                           AdmissibleFamily::canonical(1.0, kInf), 1, 2.0);
    const auto cone = gen_cone({0.5, 0.0}, 1000, rf, 1.0, 8);
    CHECK(cone.h == doctest::Approx(-0.5 + 1.0 / 1000.0).epsilon(1e-6));
    for (int j = 0; j < 8; ++j) {
        const double normalized = cone.theta[std::size_t(j)] * std::pow(1.0 + double(j), 2.0);
        CHECK(std::log2(normalized) == doctest::Approx(-double(j) * cone.h).scale(1.0).epsilon(1e-9));
    }
}

TEST_CASE("cone generator propagates domain and compatibility errors") {
    const RatioFunction rf(AdmissibleSequence::power_log(0.8, 0.0),
                           AdmissibleFamily::canonical(kInf, kInf), 1, 2.0);
    CHECK_THROWS_AS(gen_cone({0.3, 0.0}, 0, rf, 2.0, 8), Error);
    CHECK_THROWS_AS(gen_cone({0.3, 0.0}, 1, rf, 0.5, 8), Error);
    CHECK_THROWS_AS(gen_cone({0.3, 0.0}, 1, rf, 2.0, 0), Error);
    const RatioFunction bad(AdmissibleSequence::power_log(-20.0, 0.0),
                            AdmissibleFamily::canonical(kInf, kInf), 1, 2.0);
    CHECK_THROWS_AS(gen_cone({0.3, 0.0}, 1, bad, 2.0, 8), Error);
}

TEST_CASE("cusp with zero exponent is the constant unit signal") {
    const auto sig = gen_cusp(0.37, 0.0, 256);
    CHECK(sig.d == 1);
    CHECK(sig.J == 8);
    REQUIRE(sig.samples.size() == 256);
    for (double v : sig.samples) CHECK(v == 1.0);
}

TEST_CASE("cusp follows the power law near the tip and a plateau far away") {
    const double u = 0.7;
    const std::int64_t N = 1024;
    const auto sig = gen_cusp(0.5, u, N);
    // Antipodal sample sits in the plateau: exactly 0.45^u.
    CHECK(sig.samples[0] == doctest::Approx(std::pow(0.45, u)).epsilon(1e-15));
    // Within distance 1/4 the sample is the bare power of the distance.
    for (std::int64_t m : {528ll, 560ll, 640ll, 384ll}) {
        const double dist = std::abs(double(m) / double(N) - 0.5);
        CHECK(sig.samples[std::size_t(m)] == doctest::Approx(std::pow(dist, u)).epsilon(1e-14));
    }
    // On-grid tip evaluates to zero for positive exponents.
    CHECK(sig.samples[512] == 0.0);
}

TEST_CASE("cusp caps negative exponents at the half-sample distance") {
    const std::int64_t N = 512;
    const auto sig = gen_cusp(0.25, -0.1, N);
    const double cap = std::pow(0.5 / double(N), -0.1);
    CHECK(sig.samples[128] == doctest::Approx(cap).epsilon(1e-12));
    for (double v : sig.samples) {
        CHECK(std::isfinite(v));
        CHECK(v <= cap * (1.0 + 1e-12));
    }
}

TEST_CASE("cusp rejects sample counts that are not powers of two") {
    CHECK_THROWS_AS(gen_cusp(0.5, 0.5, 1000), Error);
    CHECK_THROWS_AS(gen_cusp(0.5, 0.5, 4), Error);
}

TEST_CASE("decomposed cusps hand the designed exponent to the estimator") {
    const auto filter = make_filter("db4");
    const auto fam = AdmissibleFamily::canonical(kInf, kInf);
    {
        const auto sig = gen_cusp(0.5, 0.5, std::int64_t(1) << 13);
        const auto lp = leader_pyramid(decompose(sig, filter), kInf, 5);
        const double got = pointwise_exponent(lp, {0.5, 0.0}, fam);
        CHECK(std::abs(got - 0.5) <= 0.15);
    }
    {
        // u = 2 is a smooth parabola near the tip.  Two vanishing moments see
        // the quadratic (slope 2); a single one caps the estimate at 1 away
        // from the tip, where the first derivative dominates.
        const auto sig = gen_cusp(0.5, 2.0, std::int64_t(1) << 13);
        const auto lp2 = leader_pyramid(decompose(sig, make_filter("db2")), kInf, 5);
        const double tip = pointwise_exponent(lp2, {0.5, 0.0}, fam);
        CHECK(std::abs(tip - 2.0) <= 0.3);
        const auto lp1 = leader_pyramid(decompose(sig, make_filter("haar")), kInf, 5);
        const double shoulder = pointwise_exponent(lp1, {0.4, 0.0}, fam);
        CHECK(std::abs(shoulder - 1.0) <= 0.3);
    }
}

TEST_CASE("random series are deterministic in the seed") {
    const AdmissibleSequence sigma = AdmissibleSequence::power_log(0.8, 0.0);
    const auto a = gen_random_besov(sigma, 2.0, 2.0, 8, 42, 1);
    const auto b = gen_random_besov(sigma, 2.0, 2.0, 8, 42, 1);
    const auto c = gen_random_besov(sigma, 2.0, 2.0, 8, 43, 1);
    bool differs = false;
    for (int j = 0; j < 8; ++j)
        for (std::size_t t = 0; t < a.detail[std::size_t(j)][0].size(); ++t) {
            CHECK(a.detail[std::size_t(j)][0][t] == b.detail[std::size_t(j)][0][t]);
            differs |= (a.detail[std::size_t(j)][0][t] != c.detail[std::size_t(j)][0][t]);
        }
    CHECK(differs);
}

TEST_CASE("random series follow the documented draw order and amplitude") {
    const AdmissibleSequence sigma = AdmissibleSequence::power_log(0.8, 0.0);
    const double r = 2.0, s = 2.0;
    const int J = 4;
    const auto got = gen_random_besov(sigma, r, s, J, 2026, 1);
    std::mt19937_64 rng(2026);
    for (int j = 0; j < J; ++j) {
        const double count = double(std::int64_t(1) << j);
        const double amp_log2 = -sigma.log2_value(std::size_t(j)) +
                                double(j) * 1 * inv_index(r) - inv_index(r) * std::log2(count);
        const double amp = pow2(amp_log2) / std::pow(1.0 + double(j), inv_index(s) + 0.01);
        for (std::size_t t = 0; t < got.detail[std::size_t(j)][0].size(); ++t) {
            const std::uint64_t x = rng();
            const double want =
                amp * ((x & 1u) ? 1.0 : -1.0) * (0.5 + 0.5 * (double(x >> 11) * 0x1p-53));
            CHECK(got.detail[std::size_t(j)][0][t] == want);
        }
    }
}

TEST_CASE("random series land at a moderate norm and scale homogeneously") {
    const AdmissibleSequence sigma = AdmissibleSequence::power_log(0.8, 0.0);
    auto pyr = gen_random_besov(sigma, 2.0, 2.0, 12, 7, 1);
    const double norm = besov_norm(pyr, sigma, 2.0, 2.0);
    CHECK(std::isfinite(norm));
    CHECK(norm >= 0.1);
    CHECK(norm <= 10.0);

    for (auto& plane : pyr.detail)
        for (auto& row : plane)
            for (auto& v : row) v *= 3.0;
    for (auto& v : pyr.coarse) v *= 3.0;
    CHECK(besov_norm(pyr, sigma, 2.0, 2.0) == doctest::Approx(3.0 * norm).epsilon(1e-12));

    const auto two_d = gen_random_besov(sigma, 2.0, 2.0, 6, 11, 2);
    CHECK(std::isfinite(besov_norm(two_d, sigma, 2.0, 2.0)));
}

TEST_CASE("random series require a positive lower index") {
    CHECK_THROWS_AS(gen_random_besov(AdmissibleSequence::power_log(0.0, 0.0), 2.0, 2.0, 8, 1, 1),
                    Error);
    CHECK_THROWS_AS(gen_random_besov(AdmissibleSequence::power_log(-0.5, 0.0), 2.0, 2.0, 8, 1, 1),
                    Error);
    CHECK_THROWS_AS(gen_random_besov(AdmissibleSequence::power_log(0.8, 0.0), 2.0, 2.0, 0, 1, 1),
                    Error);
    CHECK_THROWS_AS(gen_random_besov(AdmissibleSequence::power_log(0.8, 0.0), 2.0, 2.0, 8, 1, 3),
                    Error);
}
