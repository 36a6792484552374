#include "leaderscope/dyadic.hpp"

#include <algorithm>
#include <cmath>

namespace leaderscope {

namespace {

double wrap_unit(double x) {
    double y = x - std::floor(x);
    return (y >= 1.0) ? 0.0 : y;  // guard against x - floor(x) == 1 under rounding
}

/// Periodic distance on the unit circle.
double circ_dist(double a, double b) {
    double t = std::abs(a - b);
    t -= std::floor(t);
    return std::min(t, 1.0 - t);
}

}  // namespace

void check_cube(const DyadicCube& cube) {
    if (cube.d != 1 && cube.d != 2)
        fail(ErrorKind::config, "OutOfDomain", "cube: d must be 1 or 2");
    if (cube.j < 0 || cube.j > 62)
        fail(ErrorKind::config, "OutOfDomain", "cube: scale out of range");
    const std::int64_t n = scale_size(cube.j);
    for (int c = 0; c < cube.d; ++c)
        if (cube.k[c] < 0 || cube.k[c] >= n)
            fail(ErrorKind::config, "OutOfDomain", "cube: offset out of range at scale " +
                                                       std::to_string(cube.j));
}

DyadicCube cube_containing(const Point& x0, int j, int d) {
    if (d != 1 && d != 2) fail(ErrorKind::config, "OutOfDomain", "cube_containing: d must be 1 or 2");
    if (j < 0 || j > 62) fail(ErrorKind::config, "OutOfDomain", "cube_containing: bad scale");
    DyadicCube cube;
    cube.j = j;
    cube.d = d;
    const std::int64_t n = scale_size(j);
    for (int c = 0; c < d; ++c) {
        const double x = wrap_unit(x0[c]);
        std::int64_t k = std::int64_t(std::floor(x * double(n)));
        cube.k[c] = std::min<std::int64_t>(std::max<std::int64_t>(k, 0), n - 1);
    }
    return cube;
}

std::vector<DyadicCube> adjacent_cubes(const DyadicCube& cube) {
    check_cube(cube);
    const std::int64_t n = scale_size(cube.j);
    std::vector<DyadicCube> out;
    if (cube.d == 1) {
        out.reserve(3);
        for (int o = -1; o <= 1; ++o) {
            DyadicCube c = cube;
            c.k[0] = wrap_index(cube.k[0] + o, n);
            out.push_back(c);
        }
    } else {
        out.reserve(9);
        for (int o0 = -1; o0 <= 1; ++o0)
            for (int o1 = -1; o1 <= 1; ++o1) {
                DyadicCube c = cube;
                c.k[0] = wrap_index(cube.k[0] + o0, n);
                c.k[1] = wrap_index(cube.k[1] + o1, n);
                out.push_back(c);
            }
    }
    return out;
}

bool cube_contains(const DyadicCube& outer, const DyadicCube& inner) {
    check_cube(outer);
    check_cube(inner);
    if (outer.d != inner.d) fail(ErrorKind::config, "OutOfDomain", "cube_contains: dimension mismatch");
    if (inner.j < outer.j) return false;
    const int shift = inner.j - outer.j;
    for (int c = 0; c < outer.d; ++c)
        if ((inner.k[c] >> shift) != outer.k[c]) return false;
    return true;
}

int irreducible_scale(const DyadicCube& cube) {
    check_cube(cube);
    bool all_zero = true;
    int t = cube.j;
    for (int c = 0; c < cube.d; ++c) {
        if (cube.k[c] == 0) continue;
        all_zero = false;
        const int tz = __builtin_ctzll(static_cast<unsigned long long>(cube.k[c]));
        t = std::min(t, tz);
    }
    return all_zero ? 0 : cube.j - t;
}

DyadicCube irreducible(const DyadicCube& cube) {
    const int j_red = irreducible_scale(cube);
    DyadicCube out = cube;
    out.j = j_red;
    const int shift = cube.j - j_red;
    for (int c = 0; c < cube.d; ++c) out.k[c] = cube.k[c] >> shift;
    return out;
}

bool in_cone(const DyadicCube& cube, const Point& x0, double r) {
    check_cube(cube);
    if (!(r > 0.0)) fail(ErrorKind::config, "OutOfDomain", "in_cone: r must be > 0");
    const double side = cube.side();
    for (int c = 0; c < cube.d; ++c) {
        const double corner = double(cube.k[c]) * side;
        if (!(circ_dist(corner, wrap_unit(x0[c])) < r * side)) return false;
    }
    return true;
}

std::vector<DyadicCube> cone_cubes(const Point& x0, double r, int j, int d) {
    if (!(r > 0.0)) fail(ErrorKind::config, "OutOfDomain", "cone_cubes: r must be > 0");
    const std::int64_t n = scale_size(j);
    // |k − 2^j·x0| < r per axis: scan the integer window around 2^j·x0 (wrapped).
    auto axis_hits = [&](double x) {
        std::vector<std::int64_t> ks;
        const double target = wrap_unit(x) * double(n);
        const std::int64_t mid = std::int64_t(std::llround(target));
        const std::int64_t w = std::int64_t(std::ceil(r)) + 1;
        for (std::int64_t k = mid - w; k <= mid + w; ++k) {
            double t = std::fmod(std::abs(double(k) - target), double(n));
            t = std::min(t, double(n) - t);  // periodic in lattice units
            if (t < r) ks.push_back(wrap_index(k, n));
        }
        // A wide window at a coarse scale can visit the same offset twice.
        std::sort(ks.begin(), ks.end());
        ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
        return ks;
    };
    std::vector<DyadicCube> out;
    if (d == 1) {
        for (std::int64_t k : axis_hits(x0[0])) out.push_back(DyadicCube{0, j, {k, 0}, 1});
    } else if (d == 2) {
        for (std::int64_t a : axis_hits(x0[0]))
            for (std::int64_t b : axis_hits(x0[1])) out.push_back(DyadicCube{0, j, {a, b}, 2});
    } else {
        fail(ErrorKind::config, "OutOfDomain", "cone_cubes: d must be 1 or 2");
    }
    return out;
}

double lattice_distance(const Point& x0, int j, int d) {
    if (d != 1 && d != 2) fail(ErrorKind::config, "OutOfDomain", "lattice_distance: d must be 1 or 2");
    const double n = double(scale_size(j));
    double dist = 0.0;
    for (int c = 0; c < d; ++c) {
        const double t = wrap_unit(x0[c]) * n;
        const double frac = std::abs(t - std::llround(t));
        dist = std::max(dist, frac / n);
    }
    return dist;
}

double alpha_ball_radius(double alpha, int j) {
    if (!(alpha >= 1.0)) fail(ErrorKind::config, "OutOfDomain", "alpha must be >= 1");
    if (j < 0) fail(ErrorKind::config, "OutOfDomain", "alpha_ball_radius: bad scale");
    return pow2(-alpha * double(j));
}

bool alpha_approximable(const Point& x0, double alpha, int j, int d) {
    return lattice_distance(x0, j, d) <= alpha_ball_radius(alpha, j);
}

}  // namespace leaderscope
