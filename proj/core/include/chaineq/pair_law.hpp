#ifndef CHAINEQ_PAIR_LAW_HPP
#define CHAINEQ_PAIR_LAW_HPP

#include <utility>
#include <vector>

namespace chaineq {

/**
 * Repulsive nearest-neighbor force law f(r) > 0, strictly decreasing in r,
 * together with its inverse and the pair potential V (f = -dV/dr).
 *
 * Two kinds are supported: the power law f(r) = alpha * r^(-exponent) with
 * alpha > 0, exponent > 1 (V normalized so V(inf) = 0), and a monotone
 * piecewise-linear table of (r, f) samples for user-supplied laws.
 * Immutable after construction; safe to share across threads.
 */
class PairLaw {
public:
    enum class Kind { Power, Tabulated };

    static PairLaw power(double alpha, double exponent);

    // Samples (r, f(r)) with r strictly ascending, f strictly decreasing and
    // positive. The law is only defined on the sampled r interval.
    // tail_potential is the declared value of V at the largest sampled r.
    static PairLaw tabulated(std::vector<std::pair<double, double>> samples,
                             double tail_potential = 0.0);

    Kind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double exponent() const { return exponent_; }

    // f(r); r <= 0 (particle collision) throws std::domain_error.
    double force(double r) const;

    // r with f(r) = y, exact for the power law, bisection to 1e-12 relative
    // for tables. y <= 0 throws std::domain_error (f is strictly positive);
    // y outside a table's force range throws std::out_of_range.
    double inverse_force(double y) const;

    // V(r). Power law: alpha * r^(1-a) / (a-1). Tabulated: quadrature of f
    // from r to the largest sampled r plus the declared tail value.
    double potential(double r) const;

    // Attainable force range: (0, inf) open for power laws, the sampled
    // interval endpoints for tables.
    double min_force() const;
    double max_force() const;

private:
    PairLaw() = default;

    Kind kind_ = Kind::Power;
    double alpha_ = 1.0;
    double exponent_ = 2.0;

    // tabulated representation
    std::vector<double> r_;
    std::vector<double> f_;
    std::vector<double> suffix_integral_; // integral of f over [r_[i], r_.back()]
    double tail_potential_ = 0.0;
};

} // namespace chaineq

#endif
