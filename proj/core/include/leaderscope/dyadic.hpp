#pragma once

// Dyadic cube geometry on the periodized unit cube [0,1)^d, d ∈ {1, 2}.
//
// A cube λ = (i, j, k) has scale j ≥ 0, offset k ∈ {0,…,2^j−1}^d and an
// orientation tag i (0 = untagged/geometric; detail coefficients carry
// i ∈ {1,…,2^d−1}). Geometry depends only on (j, k); all neighbourhoods and
// distances wrap periodically.

#include <array>
#include <cstdint>
#include <vector>

#include "leaderscope/common.hpp"

namespace leaderscope {

/// Point in [0,1)^d; for d = 1 only x[0] is used.
using Point = std::array<double, 2>;

struct DyadicCube {
    int i = 0;                          ///< orientation tag (0 = untagged)
    int j = 0;                          ///< scale
    std::array<std::int64_t, 2> k{0, 0};  ///< offset per axis (k[1] unused for d = 1)
    int d = 1;

    double side() const { return pow2(-j); }
    bool operator==(const DyadicCube&) const = default;
};

/// Validates d ∈ {1,2}, j ≥ 0, k in range; throws OutOfDomain otherwise.
void check_cube(const DyadicCube& cube);

/// The scale-j cube containing x0: k = ⌊2^j·x0⌋ per axis (x0 wrapped into [0,1)).
DyadicCube cube_containing(const Point& x0, int j, int d);

/// λ together with its 3^d−1 periodic neighbours (offsets {−1,0,1}^d, wrapped);
/// ordering is lexicographic in the offset. Orientation tags are preserved.
std::vector<DyadicCube> adjacent_cubes(const DyadicCube& cube);

/// True when inner ⊆ outer (inner.j ≥ outer.j and the offsets nest). Ignores tags.
bool cube_contains(const DyadicCube& outer, const DyadicCube& inner);

/// Irreducible representation of the dyadic point k·2^{−j}: divides out the
/// largest shared power of two, so (j,k) → (j−t, k·2^{−t}). k ≡ 0 maps to scale 0.
DyadicCube irreducible(const DyadicCube& cube);

/// Scale of irreducible(cube); the depth at which the point k·2^{−j} first appears.
int irreducible_scale(const DyadicCube& cube);

/// Strict cone test: ‖k·2^{−j} − x0‖_∞ < r·2^{−j} with periodic distance.
bool in_cone(const DyadicCube& cube, const Point& x0, double r);

/// All scale-j offsets k (d = 1: scalars; d = 2: pairs, lexicographic) whose cube
/// lies in the strict cone of aperture r around x0.
std::vector<DyadicCube> cone_cubes(const Point& x0, double r, int j, int d);

/// Periodic distance of x0 to the nearest scale-j lattice point, in max norm.
double lattice_distance(const Point& x0, int j, int d);

/// Radius 2^{−αj} of the scale-j approximation balls (α ≥ 1).
double alpha_ball_radius(double alpha, int j);

/// True when some scale-j lattice point lies within the closed ball of radius
/// 2^{−αj} around x0: ‖x0 − k·2^{−j}‖_∞ ≤ 2^{−αj} for some k (periodic).
bool alpha_approximable(const Point& x0, double alpha, int j, int d);

}  // namespace leaderscope
