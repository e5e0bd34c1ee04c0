#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "chaineq/force_field.hpp"
#include "support.hpp"

using chaineq::ForceField;

namespace {

// midpoint-rule quadrature, independent of the field's own integral path
double quadrature(const ForceField& field, double x, int intervals = 200000) {
    double acc = 0.0;
    const double h = x / intervals;
    for (int i = 0; i < intervals; ++i)
        acc += field.value((i + 0.5) * h);
    return acc * h;
}

} // namespace

TEST_CASE("field evaluation") {
    CHECK(ForceField::constant(2.5).value(0.3) == 2.5);
    const ForceField affine = ForceField::affine(1.0, -1.0);
    CHECK(affine.value(0.0) == 1.0);
    CHECK(affine.value(1.0) == doctest::Approx(0.0));
    const ForceField table =
        ForceField::piecewise_linear({{0.0, 1.0}, {0.5, 0.0}, {1.0, 1.0}});
    CHECK(table.value(0.25) == doctest::Approx(0.5));
    CHECK(table.value(0.75) == doctest::Approx(0.5));
    CHECK(table.value(-1.0) == 1.0); // constant extension
    CHECK(table.value(2.0) == 1.0);
}

TEST_CASE("piecewise-linear construction rejects unsorted nodes") {
    CHECK_THROWS_AS(ForceField::piecewise_linear({{0.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(ForceField::piecewise_linear({{0.5, 1.0}, {0.5, 0.0}}),
                    std::invalid_argument);
}

TEST_CASE("work integral: closed forms and hand values") {
    const ForceField affine = ForceField::affine(1.0, -2.0);
    CHECK(affine.integral_from_zero(1.0) == doctest::Approx(0.0)); // x - x^2 at 1
    CHECK(affine.integral_from_zero(0.5) == doctest::Approx(0.25));

    const ForceField table =
        ForceField::piecewise_linear({{0.0, 1.0}, {0.5, 0.0}, {1.0, 1.0}});
    CHECK(table.integral_from_zero(1.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(table.integral_from_zero(0.25) == doctest::Approx(0.1875).epsilon(1e-14));
    CHECK(table.integral_from_zero(1.5) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("work integral agrees with quadrature") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 4; ++trial) {
        const ForceField field = chaineq::testing::random_nonincreasing_field(rng);
        for (double x : {0.3, 0.7, 1.0}) {
            const double exact = field.integral_from_zero(x);
            const double approx = quadrature(field, x);
            CHECK(std::abs(exact - approx) < 1e-7 * (1.0 + std::abs(exact)));
        }
    }
}

TEST_CASE("sup over an interval") {
    CHECK(ForceField::constant(-3.0).sup(0.0, 1.0) == -3.0);
    CHECK(ForceField::affine(1.0, -1.0).sup(0.0, 1.0) == 1.0);
    const ForceField table =
        ForceField::piecewise_linear({{0.0, 0.0}, {0.4, 2.0}, {1.0, -1.0}});
    CHECK(table.sup(0.0, 1.0) == 2.0);
    CHECK(table.sup(0.5, 1.0) == doctest::Approx(2.0 - 3.0 / 6.0 * 1.0));
}

TEST_CASE("monotonicity check and declaration") {
    ForceField down = ForceField::affine(1.0, -1.0);
    CHECK(down.monotone_nonincreasing(0.0, 1.0));
    CHECK_FALSE(down.declared_monotone_nonincreasing());
    down.declare_monotone_nonincreasing(0.0, 1.0);
    CHECK(down.declared_monotone_nonincreasing());

    ForceField up = ForceField::affine(0.0, 1.0);
    CHECK_FALSE(up.monotone_nonincreasing(0.0, 1.0));
    CHECK_THROWS_AS(up.declare_monotone_nonincreasing(0.0, 1.0), std::invalid_argument);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 8; ++trial)
        CHECK(chaineq::testing::random_nonincreasing_field(rng)
                  .monotone_nonincreasing(0.0, 1.0));
}

TEST_CASE("reflection flips the force direction") {
    const double length = 1.0;
    std::mt19937_64 rng(23);
    const ForceField field = chaineq::testing::random_nonincreasing_field(rng, length);
    const ForceField mirror = field.reflected(length);
    for (int i = 0; i <= 32; ++i) {
        const double x = length * i / 32.0;
        CHECK(mirror.value(x) ==
              doctest::Approx(-field.value(length - x)).epsilon(1e-12));
    }
    CHECK(ForceField::constant(2.0).reflected(1.0).value(0.5) == -2.0);
    const ForceField affine_mirror = ForceField::affine(1.0, -1.0).reflected(1.0);
    CHECK(affine_mirror.value(0.0) == doctest::Approx(0.0));
    CHECK(affine_mirror.value(1.0) == doctest::Approx(-1.0));
    // mirroring twice restores the field
    const ForceField twice = affine_mirror.reflected(1.0);
    CHECK(twice.value(0.3) == doctest::Approx(0.7).epsilon(1e-12));
}
