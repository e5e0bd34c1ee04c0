#include "chaineq/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "chaineq/errors.hpp"

namespace chaineq {

namespace {

void check_state(const ChainParams& params, const ChainState& state) {
    const int n = params.n;
    if (static_cast<int>(state.positions.size()) != n ||
        static_cast<int>(state.velocities.size()) != n)
        throw std::invalid_argument("dynamics: state arrays do not match params.n");
    for (int k = 0; k + 1 < n; ++k)
        if (!(state.positions[k + 1] > state.positions[k]))
            throw std::domain_error("dynamics: positions must be strictly increasing");
}

// pair + field force, no damping
void conservative_forces(const ChainParams& params, const Configuration& x,
                         std::vector<double>& out) {
    const int n = params.n;
    out.assign(n, 0.0);
    for (int k = 0; k + 1 < n; ++k) {
        const double f = params.law.force(x[k + 1] - x[k]);
        out[k] -= f;
        out[k + 1] += f;
    }
    for (int k = 0; k < n; ++k)
        out[k] += params.field.value(x[k]);
}

// One velocity-Verlet attempt of size dt with wall handling. Mutates state;
// returns false (state must be discarded) when a gap closes below the floor.
bool verlet_once(const ChainParams& params, ChainState& st, double dt,
                 std::vector<WallEvent>& events) {
    const int n = params.n;
    const double length = params.length;
    const double inv_m = 1.0 / params.mass;
    const double damping = params.damping;

    static thread_local std::vector<double> force;
    conservative_forces(params, st.positions, force);

    std::vector<double>& v = st.velocities;
    Configuration& x = st.positions;

    for (int k = 0; k < n; ++k) {
        const bool pinned = (k == 0 && st.stuck_left) || (k == n - 1 && st.stuck_right);
        if (pinned) {
            v[k] = 0.0;
            continue;
        }
        v[k] += 0.5 * dt * (force[k] - damping * v[k]) * inv_m; // half kick
        x[k] += dt * v[k];
    }

    const double t_after = st.time + dt;
    if (!st.stuck_left && x[0] < 0.0) {
        events.push_back({t_after, WallSide::Left, v[0]});
        x[0] = 0.0;
        v[0] = 0.0;
        st.stuck_left = true;
    }
    if (!st.stuck_right && x[n - 1] > length) {
        events.push_back({t_after, WallSide::Right, v[n - 1]});
        x[n - 1] = length;
        v[n - 1] = 0.0;
        st.stuck_right = true;
    }

    const double gap_floor = 1e-12 * length;
    for (int k = 0; k + 1 < n; ++k)
        if (!(x[k + 1] - x[k] > gap_floor))
            return false;

    // release test: positions are fresh, velocities not yet completed
    if (st.stuck_left && params.field.value(0.0) - params.law.force(x[1] - x[0]) > 0.0)
        st.stuck_left = false;
    if (st.stuck_right &&
        params.law.force(x[n - 1] - x[n - 2]) + params.field.value(length) < 0.0)
        st.stuck_right = false;

    conservative_forces(params, x, force);
    for (int k = 0; k < n; ++k) {
        const bool pinned = (k == 0 && st.stuck_left) || (k == n - 1 && st.stuck_right);
        if (pinned) {
            v[k] = 0.0;
            continue;
        }
        v[k] += 0.5 * dt * (force[k] - damping * v[k]) * inv_m;
    }
    st.time = t_after;
    return true;
}

void step_impl(const ChainParams& params, ChainState& st, double dt,
               std::vector<WallEvent>* events, int depth) {
    ChainState trial = st;
    std::vector<WallEvent> local;
    const double h_before = total_energy(params, st);

    bool ok = verlet_once(params, trial, dt, local);
    if (ok) {
        const double h_after = total_energy(params, trial);
        ok = h_after - h_before <= 1e-9 * (1.0 + std::abs(h_before));
    }
    if (ok) {
        st = std::move(trial);
        if (events)
            events->insert(events->end(), local.begin(), local.end());
        return;
    }
    if (depth >= 20)
        throw stiffness_error("step: dt underflow after 20 halvings",
                              st.positions, st.velocities, st.time, dt);
    step_impl(params, st, 0.5 * dt, events, depth + 1);
    step_impl(params, st, 0.5 * dt, events, depth + 1);
}

} // namespace

std::vector<double> net_force(const ChainParams& params, const ChainState& state) {
    check_state(params, state);
    std::vector<double> force;
    conservative_forces(params, state.positions, force);
    for (int k = 0; k < params.n; ++k)
        force[k] -= params.damping * state.velocities[k];
    return force;
}

double total_energy(const ChainParams& params, const ChainState& state) {
    check_state(params, state);
    const int n = params.n;
    double h = 0.0;
    for (int k = 0; k < n; ++k)
        h += 0.5 * params.mass * state.velocities[k] * state.velocities[k];
    for (int k = 1; k < n; ++k)
        h += params.law.potential(state.positions[k] - state.positions[k - 1]);
    for (int k = 0; k < n; ++k)
        h -= params.field.integral_from_zero(state.positions[k]);
    return h;
}

void step(const ChainParams& params, ChainState& state, double dt,
          std::vector<WallEvent>* events) {
    check_state(params, state);
    if (!(dt > 0.0))
        throw std::invalid_argument("step: dt must be > 0");
    step_impl(params, state, dt, events, 0);
}

double default_timestep(const ChainParams& params) {
    const double r0 = params.length / params.n;
    if (params.law.kind() == PairLaw::Kind::Power)
        return 0.01 * std::sqrt(params.mass * std::pow(r0, params.law.exponent() + 1.0) /
                                params.law.alpha());
    // tabulated: stiffness from the local slope at the nominal gap
    const double lo = params.law.inverse_force(params.law.max_force());
    const double hi = params.law.inverse_force(params.law.min_force());
    const double r = std::clamp(r0, lo, hi);
    const double d = 1e-3 * (hi - lo);
    const double ra = std::max(r - d, lo), rb = std::min(r + d, hi);
    const double slope = (params.law.force(ra) - params.law.force(rb)) / (rb - ra);
    return 0.01 * std::sqrt(params.mass / std::max(slope, 1e-300));
}

TrajectoryRecord simulate(const ChainParams& params, ChainState init, double t_end,
                          double sample_dt, const Configuration* target, double dt) {
    check_state(params, init);
    if (!(sample_dt > 0.0))
        throw std::invalid_argument("simulate: sample_dt must be > 0");
    if (target && target->size() != init.positions.size())
        throw std::invalid_argument("simulate: target size does not match state");
    const double dt0 = dt > 0.0 ? dt : default_timestep(params);

    TrajectoryRecord record;
    auto sample = [&](const ChainState& st) {
        const double rho = target ? distance(st.positions, *target)
                                  : std::numeric_limits<double>::quiet_NaN();
        record.samples.push_back({st.time, total_energy(params, st), rho,
                                  static_cast<long>(record.events.size())});
    };

    const double t0 = init.time;
    sample(init);
    if (t_end > t0) {
        for (long k = 1;; ++k) {
            const double ts = std::min(t0 + k * sample_dt, t_end);
            while (init.time < ts - 1e-12 * std::max(1.0, std::abs(ts)))
                step(params, init, std::min(dt0, ts - init.time), &record.events);
            sample(init);
            if (ts >= t_end)
                break;
        }
    }
    record.final_state = std::move(init);
    return record;
}

double distance(const Configuration& a, const Configuration& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("distance: configurations differ in size");
    double rho = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        rho += std::abs(a[k] - b[k]);
    return rho;
}

} // namespace chaineq
