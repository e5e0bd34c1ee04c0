#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "chaineq/analysis.hpp"

using namespace chaineq;

namespace {

ChainParams proto(const ForceField& field, double a = 2.0) {
    ChainParams params;
    params.n = 8;
    params.field = field;
    params.law = PairLaw::power(1.0, a);
    return params;
}

} // namespace

TEST_CASE("gap profile arithmetic") {
    const GapProfile eq = gap_profile(zero_force_solution(5, 1.0), 1.0);
    for (double d : eq.deltas)
        CHECK(d == doctest::Approx(0.0).epsilon(1e-14));

    const GapProfile two = gap_profile({0.0, 0.6, 1.0}, 1.0);
    CHECK(two.gaps[0] == doctest::Approx(0.6));
    CHECK(two.gaps[1] == doctest::Approx(0.4));
    CHECK(two.deltas[0] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(two.deltas[1] == doctest::Approx(-0.2).epsilon(1e-12));
    CHECK(two.b == doctest::Approx(0.2).epsilon(1e-12));

    CHECK_THROWS_AS((void)gap_profile({0.0, 0.0, 1.0}, 1.0), std::domain_error);
}

TEST_CASE("gap deltas telescope to zero") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unit(0.1, 1.0);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 5 + trial;
        Configuration x(n);
        x[0] = 0.0;
        for (int k = 1; k < n; ++k)
            x[k] = x[k - 1] + unit(rng);
        for (int k = 0; k < n; ++k)
            x[k] /= x[n - 1]; // pin both walls
        double sum = 0.0;
        for (double d : gap_profile(x, 1.0).deltas)
            sum += d;
        CHECK(std::abs(sum) < 1e-10 * n);
    }
}

TEST_CASE("first-order check: zero field is exactly uniform") {
    const SweepReport report =
        check_gap_uniformity(proto(ForceField::constant(0.0)), {10, 20, 40}, {1e-9});
    for (const auto& rec : report.records)
        CHECK(rec.d_max < 1e-9);
}

TEST_CASE("first-order check: unit field sweep shrinks deviations") {
    const SweepReport report =
        check_gap_uniformity(proto(ForceField::constant(1.0)), {20, 40, 80}, {0.05});
    CHECK(report.decreasing);
    CHECK(report.final_below_tol);
    CHECK(report.pass);
    // deviation tracks the 1/(4N) scale of the constant-field correction
    for (const auto& rec : report.records) {
        CHECK(rec.d_max * rec.n > 0.125);
        CHECK(rec.d_max * rec.n < 0.5);
    }
}

TEST_CASE("first-order check rejects increasing fields") {
    CHECK_THROWS_AS(
        (void)check_gap_uniformity(proto(ForceField::affine(0.0, 1.0)), {10, 20}, {0.1}),
        std::invalid_argument);
}

TEST_CASE("second-order check: corrections match the N^-a prediction") {
    const SweepReport report =
        check_gap_correction(proto(ForceField::constant(1.0)), {100, 200, 400});
    CHECK(report.pass);
    CHECK(report.decreasing);
    CHECK(report.records.back().e_rel < 0.1);
    // prediction at k = 1, N = 400: 0.5 * 400^-2 * 199
    CHECK(report.records.back().b_predicted == doctest::Approx(6.25e-4).epsilon(1e-12));
    const double pred_k1 = 0.5 * std::pow(400.0, -2.0) * (200.0 - 1.0);
    CHECK(pred_k1 == doctest::Approx(6.21875e-4).epsilon(1e-12));
    CHECK(std::abs(report.records.back().b_measured / 6.25e-4 - 1.0) < 0.2);
}

TEST_CASE("second-order check: zero field degenerates cleanly") {
    const SweepReport report =
        check_gap_correction(proto(ForceField::constant(0.0)), {10, 20});
    for (const auto& rec : report.records) {
        CHECK(rec.e_rel < 1e-9);
        CHECK(rec.b_predicted == 0.0);
    }
}

TEST_CASE("second-order check enforces its hypotheses") {
    CHECK_THROWS_AS(
        (void)check_gap_correction(proto(ForceField::affine(1.0, -1.0)), {10, 20}),
        std::invalid_argument);
    ChainParams scaled = proto(ForceField::constant(1.0));
    scaled.law = PairLaw::power(2.0, 2.0);
    CHECK_THROWS_AS((void)check_gap_correction(scaled, {10, 20}), std::invalid_argument);
}

TEST_CASE("sign structure of the second-order correction") {
    ChainParams params = proto(ForceField::constant(1.0));
    params.n = 400;
    const GapProfile profile = gap_profile(shoot_solve(params).positions, 1.0);
    const int n = params.n;
    for (int k = 1; k <= n / 4; ++k)
        CHECK(profile.deltas[k - 1] > 0.0);
    for (int k = 3 * n / 4; k <= n - 1; ++k)
        CHECK(profile.deltas[k - 1] < 0.0);
}

TEST_CASE("smallest wall-bound N: trivial and unit-field searches") {
    const WallBindingResult zero =
        find_wall_binding_threshold(proto(ForceField::constant(0.0)), 6);
    CHECK(zero.threshold_n == 6);
    CHECK(zero.probes.empty());

    const WallBindingResult unit =
        find_wall_binding_threshold(proto(ForceField::constant(1.0)), 4);
    CHECK_FALSE(unit.capped);
    CHECK(unit.threshold_n >= 4);
    for (int factor : {2, 4}) {
        ChainParams params = proto(ForceField::constant(1.0));
        params.n = factor * unit.threshold_n;
        CHECK_FALSE(interior_branch(params).feasible);
    }
}

TEST_CASE("continuum study confirms the degenerate family") {
    const ContinuumReport report =
        continuum_study(PairLaw::power(1.0, 2.0), 0.25, 33, 4096, 1e-6);
    CHECK(report.samples.size() == 33);
    CHECK(report.samples.front().x2 == doctest::Approx(0.25));
    CHECK(report.samples.back().x2 == doctest::Approx(0.75));
    CHECK(report.below_tol == 33);
    CHECK(report.max_residual < 1e-6);
    CHECK(report.continuum_confirmed);
}

TEST_CASE("mirror and reflection symmetry") {
    CHECK(mirror({0.0, 0.2, 1.0}, 1.0) == Configuration{0.0, 0.8, 1.0});

    ChainParams params = proto(ForceField::affine(0.0, 1.0)); // F(x) = x, non-decreasing
    params.n = 16;
    const ReflectionReport report = reflection_check(params, 1e-9 * params.n);
    CHECK(report.pass);
    CHECK(report.rho < 1e-9 * params.n);
}
