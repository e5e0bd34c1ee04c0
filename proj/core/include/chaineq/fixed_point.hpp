#ifndef CHAINEQ_FIXED_POINT_HPP
#define CHAINEQ_FIXED_POINT_HPP

#include <vector>

#include "chaineq/chain_params.hpp"

namespace chaineq {

/*
 * Equilibrium configurations of the chain.
 *
 * With x_1 pinned at 0 and a trial second position x2, the interior balance
 * conditions form a triangular recursion: the force transmitted through gap k
 * is f(x2) plus the accumulated field values, and each gap is recovered by
 * inverting the pair law. x_N as a function of x2 is continuous and, for
 * non-increasing fields, strictly increasing, so bisection on x2 until
 * x_N = L finds the fixed point.
 */

enum class ShootOutcome { Landed, Overshoot, Undershoot };

struct ShootResult {
    ShootOutcome outcome = ShootOutcome::Undershoot;
    Configuration positions; // as far as computed; full N when no escape
    double x_end = 0.0;      // x_N; +inf when the recursion escaped
    int escape_index = -1;   // particle k where the transmitted force hit <= 0
    double x2 = 0.0;
};

struct FixedPointResult {
    Configuration positions;
    double x2 = 0.0;
    double residual_max = 0.0;
    int bisection_iterations = 0;
    bool boundary_ok_left = false;   // f(x2) >= F(0)
    bool boundary_ok_right = false;  // f(x_N - x_{N-1}) + F(L) >= 0
    bool suspected_nonunique = false; // x_N(x2) locally flat: continuum nearby
};

struct ResidualReport {
    std::vector<double> per_particle;
    double max_norm = 0.0;
};

struct InteriorBranchReport {
    bool feasible = false;      // grid scan found an x_1 > 0 fixed point
    double best_defect = 0.0;   // smallest landing/balance defect over the grid
    double best_x1 = 0.0;
    Configuration witness;      // refined configuration when feasible
    int candidates_tested = 0;
    // lower bound on the chain length: sum_k (C k)^(-1/a) with C = sup F;
    // infinity when sup F <= 0 (no admissible x_1 at all)
    double divergence_lower_bound = 0.0;
    bool certified_infeasible = false; // the bound alone exceeds L
};

// Run the balance recursion from x_1 = 0 with the given x2. The field is
// evaluated with its argument clamped to [0, length]. Landed when
// |x_N - L| <= landing_tol, otherwise classified by the sign of x_N - L.
ShootResult propagate(const ChainParams& params, double x2, double landing_tol = 0.0);

// Same recursion started from an arbitrary x_1 >= 0 (interior-branch scans).
ShootResult propagate_from(const ChainParams& params, double x1, double x2,
                           double landing_tol = 0.0);

// Bisection on x2 until |x_N - L| < tol_position. Throws no_solution_error
// when bracket expansion fails. N = 2 is handled analytically (both walls).
FixedPointResult shoot_solve(const ChainParams& params, double tol_position);
FixedPointResult shoot_solve(const ChainParams& params); // tol = 1e-12 * L

// Per-particle force imbalance of a static configuration. Interior particles
// report f(gap_left) - f(gap_right) + F(x); particles within 1e-9 * L of a
// wall report only the outward-pulling violation of the wall inequality.
ResidualReport residual(const ChainParams& params, const Configuration& config);

// Scan a grid of candidate x_1 > 0 with F(x_1) > 0 for fixed points that do
// not occupy the left wall, refining any sign change by bisection.
InteriorBranchReport interior_branch(const ChainParams& params, int grid_size = 512);

// Projected gradient descent on the potential energy W with positions kept
// in [0, L] and ordered; independent brute-force oracle for shoot_solve.
// Stops when the feasible-direction gradient norm drops below tol_grad.
Configuration oracle_minimize(const ChainParams& params, Configuration init,
                              double tol_grad, long max_iterations = 1000000);

// x_k = L (k-1) / (N-1): the unique zero-field fixed point.
Configuration zero_force_solution(int n, double length);

// The three-particle field F(x) = f(1-x) - f(x) sampled on [y, 1-y]
// (constant extension outside): every x2 in [y, 1-y] makes (0, x2, 1) a
// fixed point. Segment length 1 convention.
ForceField degenerate_three_body_field(const PairLaw& law, double y,
                                       int table_points = 4096);

} // namespace chaineq

#endif
