#ifndef CHAINEQ_DYNAMICS_HPP
#define CHAINEQ_DYNAMICS_HPP

#include <vector>

#include "chaineq/chain_params.hpp"

namespace chaineq {

/**
 * Damped Newtonian dynamics of the chain with completely inelastic walls:
 * a particle reaching 0 or L loses its velocity instantly and stays pinned
 * until the net force points back into the segment.
 */
struct ChainState {
    Configuration positions;
    std::vector<double> velocities;
    bool stuck_left = false;  // implies x_1 = 0 and v_1 = 0
    bool stuck_right = false; // implies x_N = L and v_N = 0
    double time = 0.0;
};

enum class WallSide { Left, Right };

struct WallEvent {
    double time = 0.0;
    WallSide side = WallSide::Left;
    double v_pre = 0.0; // velocity absorbed by the wall
};

struct TrajectorySample {
    double t = 0.0;
    double energy = 0.0;
    double rho = 0.0; // distance to the target configuration; NaN without one
    long wall_events = 0;
};

struct TrajectoryRecord {
    std::vector<TrajectorySample> samples;
    std::vector<WallEvent> events;
    ChainState final_state;
};

// Pair + field + damping force per particle; stuck particles report the
// unconstrained value, which is what the release test inspects.
std::vector<double> net_force(const ChainParams& params, const ChainState& state);

// Kinetic energy plus pair potential minus the field work integrals.
double total_energy(const ChainParams& params, const ChainState& state);

// One velocity-Verlet step of exactly dt (half-step velocity in the damping
// term), processing wall impacts and releases after the position update.
// Splits itself in halves (up to 20 levels) whenever a gap closes below
// 1e-12 * L or the energy increases beyond 1e-9 * (1 + |H|); throws
// stiffness_error at the splitting floor.
void step(const ChainParams& params, ChainState& state, double dt,
          std::vector<WallEvent>* events = nullptr);

// dt scale of the stiffest pair at the nominal gap L/N.
double default_timestep(const ChainParams& params);

// Advance to t_end sampling H (and rho against target, when given) every
// sample_dt. dt = 0 picks default_timestep.
TrajectoryRecord simulate(const ChainParams& params, ChainState init, double t_end,
                          double sample_dt, const Configuration* target = nullptr,
                          double dt = 0.0);

// rho(X, Y) = sum_k |x_k - y_k|
double distance(const Configuration& a, const Configuration& b);

} // namespace chaineq

#endif
