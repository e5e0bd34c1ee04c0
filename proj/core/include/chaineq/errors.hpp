#ifndef CHAINEQ_ERRORS_HPP
#define CHAINEQ_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace chaineq {

// Shooting bracket exhausted both expansion ends without straddling x_N = L.
// Carries the widest bracket that was scanned.
class no_solution_error : public std::runtime_error {
public:
    no_solution_error(const std::string& what, double x2_lo, double x2_hi)
        : std::runtime_error(what), x2_lo(x2_lo), x2_hi(x2_hi) {}

    double x2_lo;
    double x2_hi;
};

// Adaptive substepping hit the dt floor (20 halvings) without producing an
// acceptable step. Carries the state at the time the step was attempted.
class stiffness_error : public std::runtime_error {
public:
    stiffness_error(const std::string& what, std::vector<double> positions,
                    std::vector<double> velocities, double time, double dt)
        : std::runtime_error(what),
          positions(std::move(positions)),
          velocities(std::move(velocities)),
          time(time),
          dt(dt) {}

    std::vector<double> positions;
    std::vector<double> velocities;
    double time;
    double dt;
};

// Minimizer exceeded its iteration cap or stalled above tolerance.
class nonconvergence_error : public std::runtime_error {
public:
    nonconvergence_error(const std::string& what, std::vector<double> last_iterate)
        : std::runtime_error(what), last_iterate(std::move(last_iterate)) {}

    std::vector<double> last_iterate;
};

// Configuration document rejected: unknown key, wrong type, or a field that
// fails validation.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace chaineq

#endif
