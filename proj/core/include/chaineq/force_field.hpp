#ifndef CHAINEQ_FORCE_FIELD_HPP
#define CHAINEQ_FORCE_FIELD_HPP

#include <utility>
#include <vector>

namespace chaineq {

/**
 * External force F(x), continuous on the segment. Constant and affine fields
 * evaluate their formula everywhere; piecewise-linear fields extend
 * constantly beyond their first and last node.
 */
class ForceField {
public:
    enum class Kind { Constant, Affine, PiecewiseLinear };

    static ForceField constant(double value);
    static ForceField affine(double c0, double c1); // F(x) = c0 + c1 * x
    static ForceField piecewise_linear(std::vector<std::pair<double, double>> points);

    Kind kind() const { return kind_; }

    double value(double x) const;

    // integral of F over [0, x]; closed form for constant/affine, exact
    // segment sums for the piecewise-linear interpolant
    double integral_from_zero(double x) const;

    // sampled sup of F over [lo, hi] (nodes plus a 1024-point grid)
    double sup(double lo, double hi) const;

    // F(x) >= F(y) for x < y, checked on a 1024-point grid over [lo, hi]
    bool monotone_nonincreasing(double lo, double hi) const;

    // the field seen through the x <-> length - x mirror; a rightward push
    // becomes a leftward one, so F~(x) = -F(length - x)
    ForceField reflected(double length) const;

    // Records a caller's monotonicity claim after validating it; throws
    // std::invalid_argument if the grid check fails.
    void declare_monotone_nonincreasing(double lo, double hi);
    bool declared_monotone_nonincreasing() const { return declared_monotone_; }

    double constant_value() const; // Constant fields only
    double affine_c0() const { return c0_; }
    double affine_c1() const { return c1_; }
    const std::vector<std::pair<double, double>>& points() const { return points_; }

private:
    ForceField() = default;

    Kind kind_ = Kind::Constant;
    double c0_ = 0.0;
    double c1_ = 0.0;
    std::vector<std::pair<double, double>> points_;
    std::vector<double> cumulative_; // integral of F over [x_0, x_i]
    bool declared_monotone_ = false;
};

} // namespace chaineq

#endif
