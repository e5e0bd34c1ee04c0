#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "chaineq/dynamics.hpp"
#include "chaineq/errors.hpp"
#include "chaineq/fixed_point.hpp"

using namespace chaineq;

namespace {

ChainParams make_params(int n, const ForceField& field, double damping = 0.0) {
    ChainParams params;
    params.n = n;
    params.mass = 1.0;
    params.damping = damping;
    params.field = field;
    params.law = PairLaw::power(1.0, 2.0);
    return params;
}

ChainState make_state(Configuration x, std::vector<double> v) {
    ChainState st;
    st.positions = std::move(x);
    st.velocities = std::move(v);
    return st;
}

ChainState random_state(const ChainParams& params, unsigned long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> gap(0.2, 1.0);
    std::uniform_real_distribution<double> speed(-0.5, 0.5);
    const int n = params.n;
    std::vector<double> cum(n, 0.0);
    for (int k = 1; k < n; ++k)
        cum[k] = cum[k - 1] + gap(rng);
    ChainState st;
    st.positions.resize(n);
    st.velocities.resize(n);
    for (int k = 0; k < n; ++k) {
        st.positions[k] =
            0.05 * params.length + 0.9 * params.length * cum[k] / cum.back();
        st.velocities[k] = speed(rng);
    }
    return st;
}

} // namespace

TEST_CASE("net force: equilibrium, single pair, damping linearity") {
    // interior particles balance exactly; the end particles are pushed into
    // the walls by the unpaired neighbor force
    const ChainParams zero = make_params(5, ForceField::constant(0.0));
    const ChainState eq = make_state(zero_force_solution(5, 1.0), {0, 0, 0, 0, 0});
    const auto feq = net_force(zero, eq);
    for (int k = 1; k < 4; ++k)
        CHECK(feq[k] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(feq[0] == doctest::Approx(-16.0)); // -f(1/4)
    CHECK(feq[4] == doctest::Approx(16.0));

    const ChainParams pair = make_params(2, ForceField::constant(0.0));
    const auto f2 = net_force(pair, make_state({0.0, 0.5}, {0.0, 0.0}));
    CHECK(f2[0] == doctest::Approx(-4.0));
    CHECK(f2[1] == doctest::Approx(4.0));

    ChainParams damped = make_params(3, ForceField::constant(0.5), 1.7);
    const ChainState moving = make_state({0.1, 0.4, 0.9}, {0.3, -0.2, 0.7});
    const ChainState still = make_state({0.1, 0.4, 0.9}, {0.0, 0.0, 0.0});
    const auto fm = net_force(damped, moving);
    const auto fs = net_force(damped, still);
    for (int k = 0; k < 3; ++k)
        CHECK(fm[k] - fs[k] ==
              doctest::Approx(-1.7 * moving.velocities[k]).epsilon(1e-13));

    CHECK_THROWS_AS((void)net_force(pair, make_state({0.5, 0.5}, {0.0, 0.0})),
                    std::domain_error);
}

TEST_CASE("total energy: pair, kinetic and field parts") {
    const ChainParams zero = make_params(2, ForceField::constant(0.0));
    CHECK(total_energy(zero, make_state({0.0, 1.0}, {0.0, 0.0})) ==
          doctest::Approx(1.0).epsilon(1e-14)); // V(1) = 1 at a = 2

    ChainParams heavy = zero;
    heavy.mass = 2.0;
    CHECK(total_energy(heavy, make_state({0.0, 1.0}, {0.5, -0.5})) ==
          doctest::Approx(1.5).epsilon(1e-14));

    const ChainParams unit = make_params(2, ForceField::constant(1.0));
    CHECK(total_energy(unit, make_state({0.0, 1.0}, {0.0, 0.0})) ==
          doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("step: stuck particle stays until the force turns inward") {
    const ChainParams params = make_params(3, ForceField::constant(0.0));
    ChainState st = make_state({0.0, 0.5, 1.0}, {0.0, 0.0, 0.0});
    st.stuck_left = true; // F(0) - f(0.5) = -4 <= 0: must hold
    for (int i = 0; i < 50; ++i)
        step(params, st, 1e-3);
    CHECK(st.positions[0] == 0.0);
    CHECK(st.velocities[0] == 0.0);
    CHECK(st.stuck_left);
}

TEST_CASE("step: fixed point is stationary") {
    const ChainParams params = make_params(5, ForceField::constant(1.0));
    Configuration star = shoot_solve(params).positions;
    star.front() = 0.0; // solver lands within tolerance; pin the walls exactly
    star.back() = 1.0;
    ChainState st = make_state(star, std::vector<double>(5, 0.0));
    const double dt = default_timestep(params);
    for (int i = 0; i < 100; ++i) {
        const Configuration before = st.positions;
        step(params, st, dt);
        for (int k = 0; k < 5; ++k)
            CHECK(std::abs(st.positions[k] - before[k]) < 1e-14);
    }
}

TEST_CASE("step: incoming particle sticks to the wall") {
    const ChainParams params = make_params(2, ForceField::constant(0.0));
    ChainState st = make_state({0.1, 0.9}, {-1.0, 0.0});
    std::vector<WallEvent> events;
    for (int i = 0; i < 200 && events.empty(); ++i)
        step(params, st, 1e-3, &events);
    REQUIRE(events.size() == 1);
    CHECK(events[0].side == WallSide::Left);
    CHECK(events[0].v_pre < 0.0);
    CHECK(st.positions[0] == 0.0);
    CHECK(st.velocities[0] == 0.0);
    CHECK(st.stuck_left);
}

TEST_CASE("step: hopeless stiffness raises a diagnostic error") {
    const ChainParams params = make_params(3, ForceField::constant(0.0));
    ChainState st = make_state({0.0, 1e-6, 1.0}, {0.0, 0.0, 0.0});
    CHECK_THROWS_AS(step(params, st, 1.0), stiffness_error);
}

TEST_CASE("simulate: stationarity at the fixed point") {
    const ChainParams params = make_params(5, ForceField::constant(1.0), 0.7);
    const Configuration star = shoot_solve(params).positions;
    ChainState st = make_state(star, std::vector<double>(5, 0.0));
    const TrajectoryRecord record = simulate(params, st, 5.0, 0.25, &star);
    for (const auto& s : record.samples)
        CHECK(s.rho < 1e-10);
}

TEST_CASE("simulate: damped run dissipates and converges") {
    const ChainParams params = make_params(8, ForceField::constant(1.0), 1.0);
    const Configuration star = shoot_solve(params).positions;
    const TrajectoryRecord record =
        simulate(params, random_state(params, 991), 30.0, 0.05, &star);

    for (std::size_t i = 1; i < record.samples.size(); ++i) {
        const double h_prev = record.samples[i - 1].energy;
        CHECK(record.samples[i].energy <= h_prev + 1e-9 * (1.0 + std::abs(h_prev)));
    }
    for (const auto& e : record.events)
        CHECK(std::abs(e.v_pre) > 0.0);
    CHECK(record.samples.back().rho < 1e-4);

    const Configuration& fin = record.final_state.positions;
    for (std::size_t k = 0; k + 1 < fin.size(); ++k)
        CHECK(fin[k] < fin[k + 1]);
}

TEST_CASE("simulate: undamped energy conservation") {
    // middle particle oscillates between the wall-bound ends; no impacts
    const ChainParams params = make_params(3, ForceField::constant(0.0), 0.0);
    ChainState st = make_state({0.0, 0.5, 1.0}, {0.0, 0.1, 0.0});
    st.stuck_left = st.stuck_right = true;
    const TrajectoryRecord record = simulate(params, st, 10.0, 0.1);
    CHECK(record.events.empty());
    const double h0 = record.samples.front().energy;
    for (const auto& s : record.samples)
        CHECK(std::abs(s.energy - h0) < 1e-6 * std::abs(h0));
}

TEST_CASE("oversized steps recover through substepping") {
    // 50x the stable step still integrates correctly via recursive halving
    const ChainParams params = make_params(5, ForceField::constant(1.0), 1.0);
    const Configuration star = shoot_solve(params).positions;
    const TrajectoryRecord record = simulate(params, random_state(params, 7), 20.0,
                                             0.5, &star, 50.0 * default_timestep(params));
    for (std::size_t i = 1; i < record.samples.size(); ++i) {
        const double h_prev = record.samples[i - 1].energy;
        CHECK(record.samples[i].energy <= h_prev + 1e-9 * (1.0 + std::abs(h_prev)));
    }
    CHECK(record.samples.back().rho < 1e-4);
}

TEST_CASE("dissipation holds across seeds") {
    const ChainParams params = make_params(6, ForceField::constant(1.0), 0.5);
    for (unsigned long seed : {1ul, 2ul, 3ul}) {
        const TrajectoryRecord record =
            simulate(params, random_state(params, seed), 10.0, 0.1);
        for (std::size_t i = 1; i < record.samples.size(); ++i) {
            const double h_prev = record.samples[i - 1].energy;
            CHECK(record.samples[i].energy <=
                  h_prev + 1e-9 * (1.0 + std::abs(h_prev)));
        }
    }
}

TEST_CASE("stiffness diagnostics carry the failing state") {
    const ChainParams params = make_params(3, ForceField::constant(0.0));
    ChainState st = make_state({0.0, 1e-6, 1.0}, {0.0, 0.0, 0.0});
    try {
        step(params, st, 1.0);
        FAIL("expected stiffness_error");
    } catch (const stiffness_error& e) {
        CHECK(e.positions.size() == 3);
        CHECK(e.velocities.size() == 3);
        CHECK(e.dt > 0.0);
    }
}

TEST_CASE("distance metric") {
    CHECK(distance({0.0, 0.5, 1.0}, {0.0, 0.5, 1.0}) == 0.0);
    CHECK(distance({0.0, 0.5, 1.0}, {0.0, 0.6, 1.0}) == doctest::Approx(0.1));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 16; ++trial) {
        Configuration a(6), b(6);
        for (int k = 0; k < 6; ++k) {
            a[k] = unit(rng);
            b[k] = unit(rng);
        }
        CHECK(distance(a, b) == distance(b, a));
    }
    CHECK_THROWS_AS((void)distance({0.0, 1.0}, {0.0, 0.5, 1.0}), std::invalid_argument);
}
