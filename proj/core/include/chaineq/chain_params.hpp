#ifndef CHAINEQ_CHAIN_PARAMS_HPP
#define CHAINEQ_CHAIN_PARAMS_HPP

#include <vector>

#include "chaineq/force_field.hpp"
#include "chaineq/pair_law.hpp"

namespace chaineq {

// Static positions x_1 <= ... <= x_N on [0, L].
using Configuration = std::vector<double>;

/**
 * Everything that defines one chain problem: N particles of mass m on
 * [0, length] with damping coefficient damping, nearest-neighbor law and
 * external field. Immutable in all solver/integrator entry points.
 */
struct ChainParams {
    int n = 2;
    double length = 1.0;
    double mass = 1.0;
    double damping = 0.0;
    PairLaw law = PairLaw::power(1.0, 2.0);
    ForceField field = ForceField::constant(0.0);

    void validate() const; // throws std::invalid_argument

    double uniform_gap() const { return length / (n - 1); }
};

} // namespace chaineq

#endif
