#pragma once

// p-leaders: localized scale-by-scale coefficient summaries.
//
// For a cube λ at scale j and p ∈ [1, ∞], the p-leader over the truncated
// subtree is
//
//   d^p_λ = max_{j' ∈ [j, J_trunc]} ( 2^{(j−j')d} · Σ_{λ' ⊆ λ, scale(λ') = j'} |c_{λ'}|^p )^{1/p}
//
// (all orientations of λ' enter the sum; p = ∞ degenerates to the plain
// maximum of |c| over the subtree). The finest `guard` scales are excluded
// from the *reported* range — truncation starves their subtrees — but still
// feed the sums of coarser cubes. The scale-0 approximation never enters.
//
// The pyramid evaluator runs bottom-up with per-depth slice accumulators
// (O(4^J·J) work for d = 2, O(2^J·J) for d = 1), which the brute-force
// enumerator cross-checks.

#include <cstdint>
#include <vector>

#include "leaderscope/common.hpp"
#include "leaderscope/dyadic.hpp"
#include "leaderscope/wavelet.hpp"

namespace leaderscope {

struct LeaderPyramid {
    int d = 1;
    double p = kInf;
    int J_trunc = 0;  ///< finest detail scale entering the sums (pyramid J − 1)
    int guard = 2;    ///< finest scales excluded from the reported range
    /// values[j][flat k] for reported scales j ∈ [0, max_scale()].
    std::vector<std::vector<double>> values;

    int max_scale() const { return J_trunc - guard; }
};

/// Builds the full leader pyramid. Requires p ∈ [1, ∞], guard ≥ 0 and
/// J_trunc − guard ≥ 0 (throws ResolutionError otherwise), pyramid.J ≥ 1.
LeaderPyramid leader_pyramid(const CoefficientPyramid& pyramid, double p, int guard = 2);

/// Direct evaluation of one d^p_λ by enumerating the subtree (oracle-grade,
/// exponential in depth). λ may carry any orientation tag; geometry uses (j,k).
double p_leader_bruteforce(const CoefficientPyramid& pyramid, double p, const DyadicCube& cube);

/// Local leader at x0: max of d^p over the 3^d cubes adjacent to λ_j(x0)
/// (periodic). j must be a reported scale of lp.
double local_leader(const LeaderPyramid& lp, const Point& x0, int j);

/// Per-scale cone norms of raw coefficients: for each detail scale j,
/// ( Σ_{λ ∈ cone(x0, r) at scale j, all orientations} |c_λ|^p )^{1/p}
/// (max over the cone for p = ∞). Cone membership is the strict test of
/// in_cone. Returns one value per scale j ∈ [0, pyramid.J−1].
std::vector<double> cone_coefficient_norms(const CoefficientPyramid& pyramid, const Point& x0,
                                           double r, double p);

}  // namespace leaderscope
