#ifndef CHAINEQ_TESTS_SUPPORT_HPP
#define CHAINEQ_TESTS_SUPPORT_HPP

#include <random>
#include <utility>
#include <vector>

#include "chaineq/force_field.hpp"

namespace chaineq::testing {

// Random non-increasing piecewise-linear field on [0, length]: 2..8 nodes,
// F(0) in [-1, 2], steps down by up to 1 per node.
inline ForceField random_nonincreasing_field(std::mt19937_64& rng, double length = 1.0) {
    std::uniform_int_distribution<int> node_count(2, 8);
    std::uniform_real_distribution<double> start(-1.0, 2.0);
    std::uniform_real_distribution<double> drop(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const int nodes = node_count(rng);
    std::vector<double> xs(nodes);
    xs.front() = 0.0;
    xs.back() = length;
    for (int i = 1; i + 1 < nodes; ++i)
        xs[i] = length * unit(rng);
    std::sort(xs.begin(), xs.end());
    // collapse accidental duplicates by nudging towards the right neighbor
    for (int i = 1; i < nodes; ++i)
        if (xs[i] <= xs[i - 1])
            xs[i] = xs[i - 1] + 1e-6 * length;

    std::vector<std::pair<double, double>> pts(nodes);
    double value = start(rng);
    for (int i = 0; i < nodes; ++i) {
        pts[i] = {xs[i], value};
        value -= drop(rng);
    }
    return ForceField::piecewise_linear(std::move(pts));
}

} // namespace chaineq::testing

#endif
