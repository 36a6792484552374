// Dyadic cube geometry on the periodized unit cube: containment, adjacency,
// irreducible representations, cone membership, and lattice approximation.

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "leaderscope/dyadic.hpp"
#include "leaderscope/errors.hpp"

using namespace leaderscope;

namespace {

double pdist(double a, double b) {
    double t = std::abs(a - b);
    t -= std::floor(t);
    return std::min(t, 1.0 - t);
}

double wrap01(double x) {
    const double y = x - std::floor(x);
    return (y >= 1.0) ? 0.0 : y;
}

/// Full enumeration of the strict cone at scale j: periodic corner distance
/// below r·2^{−j} on every axis.
std::vector<DyadicCube> cone_oracle(const Point& x0, double r, int j, int d) {
    const std::int64_t n = scale_size(j);
    const double side = pow2(-j);
    std::vector<DyadicCube> out;
    auto hit = [&](const DyadicCube& c) {
        for (int a = 0; a < d; ++a)
            if (!(pdist(double(c.k[a]) * side, wrap01(x0[a])) < r * side)) return false;
        return true;
    };
    if (d == 1) {
        for (std::int64_t k = 0; k < n; ++k) {
            DyadicCube c{0, j, {k, 0}, 1};
            if (hit(c)) out.push_back(c);
        }
    } else {
        for (std::int64_t a = 0; a < n; ++a)
            for (std::int64_t b = 0; b < n; ++b) {
                DyadicCube c{0, j, {a, b}, 2};
                if (hit(c)) out.push_back(c);
            }
    }
    return out;
}

/// Halve offsets until some axis is odd (point first appears at that depth).
DyadicCube irreducible_oracle(DyadicCube c) {
    bool all_zero = true;
    for (int a = 0; a < c.d; ++a) all_zero = all_zero && (c.k[a] == 0);
    if (all_zero) {
        c.j = 0;
        return c;
    }
    auto some_odd = [&] {
        for (int a = 0; a < c.d; ++a)
            if (c.k[a] % 2 != 0 && c.k[a] != 0) return true;
        return false;
    };
    while (c.j > 0 && !some_odd()) {
        c.j -= 1;
        for (int a = 0; a < c.d; ++a) c.k[a] /= 2;
    }
    return c;
}

}  // namespace

TEST_CASE("containing cube truncates binary digits and wraps the point") {
    const auto c = cube_containing({0.3, 0.0}, 3, 1);
    CHECK(c.j == 3);
    CHECK(c.k[0] == 2);  // ⌊0.3·8⌋
    CHECK(c.d == 1);
    CHECK(c.side() == doctest::Approx(0.125));

    const auto w = cube_containing({-0.25, 1.8}, 2, 2);
    CHECK(w.k[0] == 3);  // −0.25 wraps to 0.75
    CHECK(w.k[1] == 3);  // 1.8 wraps to 0.8
    CHECK(cube_contains(cube_containing({0.3, 0.0}, 1, 1), c));
}

TEST_CASE("cube validation rejects bad dimensions, scales, and offsets") {
    CHECK_NOTHROW(check_cube(DyadicCube{0, 4, {15, 0}, 1}));
    CHECK_THROWS_AS(check_cube(DyadicCube{0, 4, {16, 0}, 1}), Error);
    CHECK_THROWS_AS(check_cube(DyadicCube{0, 4, {-1, 0}, 1}), Error);
    CHECK_THROWS_AS(check_cube(DyadicCube{0, -1, {0, 0}, 1}), Error);
    CHECK_THROWS_AS(check_cube(DyadicCube{0, 4, {0, 0}, 3}), Error);
    CHECK_THROWS_AS(cube_containing({0.5, 0.5}, 2, 0), Error);
}

TEST_CASE("adjacency enumerates wrapped offset shifts in order") {
    const auto line = adjacent_cubes(DyadicCube{2, 3, {0, 0}, 1});
    REQUIRE(line.size() == 3);
    CHECK(line[0].k[0] == 7);  // wraps below 0
    CHECK(line[1].k[0] == 0);
    CHECK(line[2].k[0] == 1);
    for (const auto& c : line) {
        CHECK(c.i == 2);  // orientation tag preserved
        CHECK(c.j == 3);
    }

    const auto plane = adjacent_cubes(DyadicCube{0, 2, {3, 1}, 2});
    REQUIRE(plane.size() == 9);
    CHECK(plane[0].k == std::array<std::int64_t, 2>{2, 0});
    CHECK(plane[4].k == std::array<std::int64_t, 2>{3, 1});
    CHECK(plane[8].k == std::array<std::int64_t, 2>{0, 2});  // axis 0 wraps above
}

TEST_CASE("containment nests offsets by right shift") {
    const DyadicCube parent{0, 2, {1, 0}, 1};
    CHECK(cube_contains(parent, parent));
    CHECK(cube_contains(parent, DyadicCube{0, 4, {5, 0}, 1}));   // [5/16,6/16) ⊂ [1/4,2/4)
    CHECK(!cube_contains(parent, DyadicCube{0, 4, {8, 0}, 1}));
    CHECK(!cube_contains(DyadicCube{0, 4, {5, 0}, 1}, parent));  // finer cannot contain coarser
    CHECK(cube_contains(DyadicCube{0, 1, {1, 1}, 2}, DyadicCube{0, 3, {6, 5}, 2}));
    CHECK(!cube_contains(DyadicCube{0, 1, {1, 1}, 2}, DyadicCube{0, 3, {3, 5}, 2}));
    CHECK_THROWS_AS(cube_contains(parent, DyadicCube{0, 3, {1, 1}, 2}), Error);
}

TEST_CASE("irreducible representation divides out shared powers of two") {
    // 6/8 = 3/4: scale drops by one.
    const auto r = irreducible(DyadicCube{0, 3, {6, 0}, 1});
    CHECK(r.j == 2);
    CHECK(r.k[0] == 3);
    CHECK(irreducible_scale(DyadicCube{0, 3, {6, 0}, 1}) == 2);
    // Odd offsets are already irreducible.
    CHECK(irreducible(DyadicCube{0, 5, {17, 0}, 1}) == DyadicCube{0, 5, {17, 0}, 1});
    // The origin lives at scale 0.
    CHECK(irreducible_scale(DyadicCube{0, 9, {0, 0}, 1}) == 0);
    CHECK(irreducible_scale(DyadicCube{0, 7, {0, 0}, 2}) == 0);
    // d = 2 reduces by the smaller trailing-zero count.
    const auto q = irreducible(DyadicCube{0, 5, {4, 6}, 2});
    CHECK(q.j == 4);
    CHECK(q.k == std::array<std::int64_t, 2>{2, 3});
    // A zero axis never blocks the reduction.
    const auto z = irreducible(DyadicCube{0, 5, {0, 8}, 2});
    CHECK(z.j == 2);
    CHECK(z.k == std::array<std::int64_t, 2>{0, 1});
}

TEST_CASE("irreducible matches the halving oracle on random cubes") {
    std::mt19937_64 rng(29);
    for (int rep = 0; rep < 400; ++rep) {
        DyadicCube c;
        c.d = (rep % 2) + 1;
        c.j = int(rng() % 14);
        const std::int64_t n = scale_size(c.j);
        for (int a = 0; a < c.d; ++a) c.k[a] = std::int64_t(rng() % std::uint64_t(n));
        const auto got = irreducible(c);
        const auto want = irreducible_oracle(c);
        CHECK(got == want);
        CHECK(irreducible_scale(c) == want.j);
        CHECK(irreducible(got) == got);  // idempotent
        // Exact reconstruction at the original scale.
        for (int a = 0; a < c.d; ++a) CHECK((got.k[a] << (c.j - got.j)) == c.k[a]);
    }
}

TEST_CASE("cone membership compares corner distance against aperture") {
    const Point x0{0.5, 0.0};
    // Corner 0.5 at distance 0 is always inside.
    CHECK(in_cone(DyadicCube{0, 3, {4, 0}, 1}, x0, 0.1));
    // Corner 0.375: distance 0.125 = 1·2^{−3}; strict inequality fails at r = 1.
    CHECK(!in_cone(DyadicCube{0, 3, {3, 0}, 1}, x0, 1.0));
    CHECK(in_cone(DyadicCube{0, 3, {3, 0}, 1}, x0, 1.001));
    CHECK_THROWS_AS(in_cone(DyadicCube{0, 3, {3, 0}, 1}, x0, 0.0), Error);
}

TEST_CASE("cone enumeration matches the brute-force scan") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double r : {0.3, 1.0, 1.2, 2.5})
        for (int j : {0, 1, 2, 3, 5})
            for (int d : {1, 2}) {
                for (int rep = 0; rep < 6; ++rep) {
                    const Point x0{u(rng), u(rng)};
                    const auto got = cone_cubes(x0, r, j, d);
                    const auto want = cone_oracle(x0, r, j, d);
                    REQUIRE(got.size() == want.size());
                    for (std::size_t t = 0; t < got.size(); ++t) CHECK(got[t] == want[t]);
                    for (const auto& c : got) CHECK(in_cone(c, x0, r));
                }
            }
    // Large apertures saturate at the full scale without duplicates.
    const auto all = cone_cubes({0.37, 0.0}, 9.0, 2, 1);
    CHECK(all.size() == 4);
    CHECK_THROWS_AS(cone_cubes({0.1, 0.0}, -1.0, 3, 1), Error);
}

TEST_CASE("lattice distance uses the periodic max norm") {
    // Nearest quarter-lattice point to 0.3 is 0.25.
    CHECK(lattice_distance({0.3, 0.0}, 2, 1) == doctest::Approx(0.05).epsilon(1e-12));
    // Exactly on the lattice.
    CHECK(lattice_distance({0.75, 0.0}, 2, 1) == doctest::Approx(0.0));
    // Wraps: 0.99 is 0.01 from the origin.
    CHECK(lattice_distance({0.99, 0.0}, 0, 1) == doctest::Approx(0.01).epsilon(1e-10));
    // Max over axes.
    CHECK(lattice_distance({0.3, 0.1}, 2, 2) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("approximation balls shrink like 2^{-alpha j}") {
    CHECK(alpha_ball_radius(1.0, 3) == doctest::Approx(0.125));
    CHECK(alpha_ball_radius(2.0, 3) == doctest::Approx(1.0 / 64.0));
    CHECK_THROWS_AS(alpha_ball_radius(0.5, 3), Error);
    CHECK_THROWS_AS(alpha_ball_radius(2.0, -1), Error);

    // Every point is 1-approximable: spacing 2^{−j} leaves max distance 2^{−j−1}.
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        const Point x0{u(rng), u(rng)};
        for (int j : {0, 1, 4, 9}) {
            CHECK(alpha_approximable(x0, 1.0, j, 1));
            CHECK(alpha_approximable(x0, 1.0, j, 2));
        }
    }
    // 1/3 stays a fixed fraction of the spacing away: 2-approximability dies out…
    CHECK(alpha_approximable({1.0 / 3.0, 0.0}, 2.0, 1, 1));
    CHECK(!alpha_approximable({1.0 / 3.0, 0.0}, 2.0, 3, 1));
    CHECK(!alpha_approximable({1.0 / 3.0, 0.0}, 2.0, 8, 1));
    // …while dyadic rationals are approximable at every order once resolved.
    for (int j : {3, 5, 10}) CHECK(alpha_approximable({0.375, 0.0}, 8.0, j, 1));
}
