// Localized coefficient summaries: the pyramid evaluator against a
// containment-scan oracle, spike propagation in closed form, ordering
// properties in p, truncation/guard semantics, and cone norms.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "leaderscope/errors.hpp"
#include "leaderscope/leaders.hpp"

#include "helpers.hpp"

using namespace leaderscope;

namespace {

/// Containment-scan oracle: collects every coefficient under λ by testing
/// cube_contains against all cubes of each finer scale. Structurally unlike
/// both the slice accumulator and the offset-range enumerator.
double leader_oracle(const CoefficientPyramid& pyr, double p, const DyadicCube& cube) {
    const int J_tr = pyr.J - 1;
    double best = 0.0;
    for (int jp = cube.j; jp <= J_tr; ++jp) {
        const std::int64_t n = std::int64_t(1) << jp;
        double slice = 0.0;
        const std::int64_t total = pyr.cubes_per_scale(jp);
        for (std::int64_t flat = 0; flat < total; ++flat) {
            DyadicCube c{0, jp, {flat % n, flat / n}, pyr.d};
            if (pyr.d == 1) c.k = {flat, 0};
            if (!cube_contains(cube, c)) continue;
            for (int i = 0; i < pyr.orientations(); ++i) {
                const double v = std::abs(pyr.detail[jp][i][flat]);
                slice = is_inf(p) ? std::max(slice, v) : slice + std::pow(v, p);
            }
        }
        best = std::max(best, is_inf(p) ? slice : pow2(double(cube.j - jp) * pyr.d) * slice);
    }
    return is_inf(p) ? best : std::pow(best, 1.0 / p);
}

DyadicCube cube_at(int j, std::int64_t flat, int d) {
    if (d == 1) return DyadicCube{0, j, {flat, 0}, 1};
    const std::int64_t n = std::int64_t(1) << j;
    return DyadicCube{0, j, {flat % n, flat / n}, 2};
}

}  // namespace

TEST_CASE("pyramid evaluator matches the containment oracle and the enumerator") {
    std::mt19937_64 rng(61);
    for (int d : {1, 2}) {
        const int J = (d == 1) ? 6 : 4;
        for (double p : {1.0, 1.5, 2.0, kInf}) {
            const auto pyr = test_helpers::random_pyramid(d, J, rng());
            const auto lp = leader_pyramid(pyr, p, 0);
            REQUIRE(lp.max_scale() == J - 1);
            for (int j = 0; j <= lp.max_scale(); ++j)
                for (std::int64_t flat = 0; flat < pyr.cubes_per_scale(j); ++flat) {
                    const auto cube = cube_at(j, flat, d);
                    const double want = leader_oracle(pyr, p, cube);
                    CHECK(test_helpers::close_rel(lp.values[j][std::size_t(flat)], want, 1e-12));
                    CHECK(test_helpers::close_rel(p_leader_bruteforce(pyr, p, cube), want, 1e-12));
                }
        }
    }
}

TEST_CASE("a single spike propagates upward with the 2^{(j-j0)d/p} weight") {
    const int J = 7, j0 = 5;
    const std::int64_t k0 = 13;
    const double v = 0.8;
    const auto pyr = test_helpers::single_spike(1, J, 1, j0, k0, v);
    for (double p : {1.0, 2.0, 4.0}) {
        const auto lp = leader_pyramid(pyr, p, 0);
        for (int j = 0; j <= j0; ++j) {
            const std::int64_t hit = k0 >> (j0 - j);
            for (std::int64_t k = 0; k < (std::int64_t(1) << j); ++k) {
                const double want = (k == hit) ? pow2(double(j - j0) / p) * v : 0.0;
                CHECK(lp.values[j][std::size_t(k)] == doctest::Approx(want).epsilon(1e-12));
            }
        }
        // Scales below the spike see nothing.
        for (std::int64_t k = 0; k < 64; ++k) CHECK(lp.values[6][std::size_t(k)] == 0.0);
    }
    const auto li = leader_pyramid(pyr, kInf, 0);
    for (int j = 0; j <= j0; ++j) CHECK(li.values[j][std::size_t(k0 >> (j0 - j))] == v);
}

TEST_CASE("2-D spikes combine all orientations of the same cube") {
    auto pyr = CoefficientPyramid::zeros(2, 3);
    pyr.at(1, 2, 5) = 3.0;
    pyr.at(2, 2, 5) = 4.0;
    const auto l2 = leader_pyramid(pyr, 2.0, 0);
    CHECK(l2.values[2][5] == doctest::Approx(5.0).epsilon(1e-12));  // (3² + 4²)^{1/2}
    const auto li = leader_pyramid(pyr, kInf, 0);
    CHECK(li.values[2][5] == doctest::Approx(4.0));
    const auto l1 = leader_pyramid(pyr, 1.0, 0);
    CHECK(l1.values[2][5] == doctest::Approx(7.0));
    // Parent cube at scale 1 sees the slice with one halving weight (d = 2, p = 1).
    CHECK(l1.values[1][std::size_t((5 % 4) / 2 + 2 * ((5 / 4) / 2))] ==
          doctest::Approx(0.25 * 7.0).epsilon(1e-12));
}

TEST_CASE("summaries are non-decreasing in p (weighted power means)") {
    std::mt19937_64 rng(67);
    const auto pyr = test_helpers::random_pyramid(1, 6, rng());
    const double ps[] = {1.0, 1.5, 2.0, 4.0, kInf};
    std::vector<LeaderPyramid> lps;
    for (double p : ps) lps.push_back(leader_pyramid(pyr, p, 0));
    for (int j = 0; j < 6; ++j)
        for (std::int64_t k = 0; k < (std::int64_t(1) << j); ++k)
            for (std::size_t t = 0; t + 1 < lps.size(); ++t)
                CHECK(lps[t].values[j][std::size_t(k)] <=
                      lps[t + 1].values[j][std::size_t(k)] * (1.0 + 1e-12));
}

TEST_CASE("sup summaries dominate their children") {
    std::mt19937_64 rng(71);
    const auto pyr = test_helpers::random_pyramid(2, 4, rng());
    const auto lp = leader_pyramid(pyr, kInf, 0);
    for (int j = 0; j + 1 <= lp.max_scale(); ++j) {
        const std::int64_t n = std::int64_t(1) << j;
        for (std::int64_t k0 = 0; k0 < n; ++k0)
            for (std::int64_t k1 = 0; k1 < n; ++k1) {
                const double parent = lp.values[j][std::size_t(k0 + n * k1)];
                for (int c0 = 0; c0 < 2; ++c0)
                    for (int c1 = 0; c1 < 2; ++c1)
                        CHECK(parent >= lp.values[j + 1][std::size_t((2 * k0 + c0) +
                                                                     2 * n * (2 * k1 + c1))]);
            }
    }
}

TEST_CASE("the guard trims reporting but never the subtree sums") {
    std::mt19937_64 rng(73);
    const auto pyr = test_helpers::random_pyramid(1, 7, rng());
    const auto full = leader_pyramid(pyr, 2.0, 0);
    const auto trimmed = leader_pyramid(pyr, 2.0, 3);
    CHECK(full.J_trunc == 6);
    CHECK(trimmed.max_scale() == 3);
    CHECK(trimmed.values.size() == 4);
    for (int j = 0; j <= 3; ++j) {
        REQUIRE(trimmed.values[j].size() == full.values[j].size());
        for (std::size_t k = 0; k < full.values[j].size(); ++k)
            CHECK(trimmed.values[j][k] == full.values[j][k]);
    }
    // Guard equal to J_trunc leaves exactly the root scale.
    CHECK(leader_pyramid(pyr, 2.0, 6).max_scale() == 0);
    CHECK_THROWS_AS(leader_pyramid(pyr, 2.0, 7), Error);
    CHECK_THROWS_AS(leader_pyramid(pyr, 2.0, -1), Error);
    CHECK_THROWS_AS(leader_pyramid(pyr, 0.5, 0), Error);
    CHECK_THROWS_AS(leader_pyramid(CoefficientPyramid::zeros(1, 0), 2.0, 0), Error);
}

TEST_CASE("local summaries take the max over the wrapped neighborhood") {
    const auto pyr = test_helpers::single_spike(1, 6, 1, 4, 0, 1.0);
    const auto lp = leader_pyramid(pyr, kInf, 1);
    // x0 = 0.95 lives in the last scale-4 cube; its right neighbor wraps to
    // offset 0, which holds the spike.
    CHECK(local_leader(lp, {0.95, 0.0}, 4) == doctest::Approx(1.0));
    // Two cubes away no neighborhood reaches it.
    CHECK(local_leader(lp, {0.85, 0.0}, 4) == doctest::Approx(0.0));
    // Direct check against the stored values.
    std::mt19937_64 rng(79);
    const auto rp = test_helpers::random_pyramid(1, 6, rng());
    const auto rl = leader_pyramid(rp, 2.0, 2);
    for (double x : {0.0, 0.26, 0.51, 0.99})
        for (int j = 0; j <= rl.max_scale(); ++j) {
            const std::int64_t n = std::int64_t(1) << j;
            const std::int64_t c = std::min<std::int64_t>(std::int64_t(x * double(n)), n - 1);
            double want = 0.0;
            for (std::int64_t o = -1; o <= 1; ++o)
                want = std::max(want, rl.values[j][std::size_t(((c + o) % n + n) % n)]);
            CHECK(local_leader(rl, {x, 0.0}, j) == doctest::Approx(want));
        }
    CHECK_THROWS_AS(local_leader(rl, {0.5, 0.0}, rl.max_scale() + 1), Error);
    CHECK_THROWS_AS(local_leader(rl, {0.5, 0.0}, -1), Error);
}

TEST_CASE("cone norms aggregate raw coefficients scale by scale") {
    std::mt19937_64 rng(83);
    for (int d : {1, 2}) {
        const int J = (d == 1) ? 6 : 4;
        const auto pyr = test_helpers::random_pyramid(d, J, rng());
        const Point x0{0.31, 0.62};
        for (double r : {0.8, 1.5})
            for (double p : {1.0, 2.0, kInf}) {
                const auto got = cone_coefficient_norms(pyr, x0, r, p);
                REQUIRE(got.size() == std::size_t(J));
                for (int j = 0; j < J; ++j) {
                    double acc = 0.0;
                    const std::int64_t n = std::int64_t(1) << j;
                    for (std::int64_t flat = 0; flat < pyr.cubes_per_scale(j); ++flat) {
                        const auto cube = cube_at(j, flat, d);
                        if (!in_cone(cube, x0, r)) continue;
                        for (int i = 0; i < pyr.orientations(); ++i) {
                            const double v = std::abs(pyr.detail[j][i][std::size_t(
                                cube.k[0] + (d == 2 ? n * cube.k[1] : 0))]);
                            acc = is_inf(p) ? std::max(acc, v) : acc + std::pow(v, p);
                        }
                    }
                    const double want = is_inf(p) ? acc : std::pow(acc, 1.0 / p);
                    CHECK(test_helpers::close_rel(got[std::size_t(j)], want, 1e-12));
                }
            }
    }
    CHECK_THROWS_AS(
        cone_coefficient_norms(test_helpers::random_pyramid(1, 3, 1), {0.5, 0.0}, 0.0, 2.0),
        Error);
}

TEST_CASE("zero pyramids produce zero summaries everywhere") {
    const auto lp = leader_pyramid(CoefficientPyramid::zeros(2, 4), 1.5, 0);
    for (const auto& level : lp.values)
        for (double v : level) CHECK(v == 0.0);
}
