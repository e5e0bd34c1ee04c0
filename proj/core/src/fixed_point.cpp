#include "chaineq/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "chaineq/errors.hpp"

namespace chaineq {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

double clamp01(double x, double length) {
    return std::clamp(x, 0.0, length);
}

// x_N as a plain number for bracketing: +inf when the recursion escaped
double landing_value(const ShootResult& r) {
    return r.escape_index >= 0 ? kInf : r.x_end;
}

} // namespace

ShootResult propagate_from(const ChainParams& params, double x1, double x2,
                           double landing_tol) {
    params.validate();
    if (!(x1 >= 0.0))
        throw std::domain_error("propagate_from: x1 must be >= 0");
    if (!(x2 > x1))
        throw std::domain_error("propagate_from: x2 must exceed x1");

    const int n = params.n;
    const double length = params.length;

    ShootResult result;
    result.x2 = x2;
    result.positions.reserve(n);
    result.positions.push_back(x1);
    result.positions.push_back(x2);

    // transmitted force through the current gap; grows by F(x_k) per particle
    double transmitted = params.law.force(x2 - x1);
    for (int k = 2; k <= n - 1; ++k) {
        const double xk = result.positions.back();
        transmitted += params.field.value(clamp01(xk, length));
        if (transmitted <= 0.0) {
            result.outcome = ShootOutcome::Overshoot;
            result.escape_index = k;
            result.x_end = kInf;
            return result;
        }
        result.positions.push_back(xk + params.law.inverse_force(transmitted));
    }

    result.x_end = result.positions.back();
    if (std::abs(result.x_end - length) <= landing_tol)
        result.outcome = ShootOutcome::Landed;
    else if (result.x_end > length)
        result.outcome = ShootOutcome::Overshoot;
    else
        result.outcome = ShootOutcome::Undershoot;
    return result;
}

ShootResult propagate(const ChainParams& params, double x2, double landing_tol) {
    if (!(x2 > 0.0))
        throw std::domain_error("propagate: x2 must be > 0");
    return propagate_from(params, 0.0, x2, landing_tol);
}

ResidualReport residual(const ChainParams& params, const Configuration& config) {
    const int n = params.n;
    if (static_cast<int>(config.size()) != n)
        throw std::invalid_argument("residual: configuration size does not match params.n");
    const double length = params.length;
    const double wall_tol = 1e-9 * length;

    std::vector<double> pair_force(n - 1);
    for (int k = 0; k < n - 1; ++k) {
        const double gap = config[k + 1] - config[k];
        if (!(gap > 0.0))
            throw std::domain_error("residual: positions must be strictly increasing");
        pair_force[k] = params.law.force(gap);
    }

    ResidualReport report;
    report.per_particle.resize(n);

    // left end: wall inequality when pinned at 0, free balance otherwise
    if (config.front() <= wall_tol)
        report.per_particle[0] = std::max(0.0, params.field.value(0.0) - pair_force[0]);
    else
        report.per_particle[0] = params.field.value(config.front()) - pair_force[0];

    for (int k = 1; k < n - 1; ++k)
        report.per_particle[k] =
            pair_force[k - 1] - pair_force[k] + params.field.value(config[k]);

    if (config.back() >= length - wall_tol)
        report.per_particle[n - 1] =
            std::max(0.0, -(pair_force[n - 2] + params.field.value(length)));
    else
        report.per_particle[n - 1] =
            pair_force[n - 2] + params.field.value(config.back());

    for (double r : report.per_particle)
        report.max_norm = std::max(report.max_norm, std::abs(r));
    return report;
}

namespace {

FixedPointResult finalize_solution(const ChainParams& params, const ShootResult& shot,
                                   int iterations, double tol_position) {
    const int n = params.n;
    const double length = params.length;

    FixedPointResult result;
    result.positions = shot.positions;
    result.x2 = shot.x2;
    result.bisection_iterations = iterations;
    result.residual_max = residual(params, result.positions).max_norm;
    result.boundary_ok_left =
        params.law.force(shot.x2) >= params.field.value(0.0);
    const double last_gap = result.positions[n - 1] - result.positions[n - 2];
    result.boundary_ok_right =
        params.law.force(last_gap) + params.field.value(length) >= 0.0;

    // Degenerate-field detection: probe x2 on both sides of the root; if a
    // probe still lands on L the landing condition holds on a whole interval
    // and the fixed point is not unique.
    const double eps = 1e-3 * params.uniform_gap();
    const double near = std::max(1e-6 * length, 100.0 * tol_position);
    for (const double x2_probe : {shot.x2 + eps,
                                  shot.x2 > 2.0 * eps ? shot.x2 - eps : 0.5 * shot.x2}) {
        try {
            const double landing = landing_value(propagate(params, x2_probe));
            if (std::abs(landing - length) < near)
                result.suspected_nonunique = true;
        } catch (const std::out_of_range&) {
            // tabulated law ran out of range at a probe; leave the flag unset
        }
    }
    return result;
}

} // namespace

FixedPointResult shoot_solve(const ChainParams& params, double tol_position) {
    params.validate();
    const int n = params.n;
    const double length = params.length;

    if (n == 2) {
        FixedPointResult result;
        result.positions = {0.0, length};
        result.x2 = length;
        result.residual_max = residual(params, result.positions).max_norm;
        result.boundary_ok_left =
            params.law.force(length) >= params.field.value(0.0);
        result.boundary_ok_right =
            params.law.force(length) + params.field.value(length) >= 0.0;
        return result;
    }

    const double h = params.uniform_gap();

    // bracket: halve x2 until undershoot, double until overshoot (cap x2 = L)
    double lo = 0.5 * h;
    const double lo_floor = 1e-3 * h;
    for (;;) {
        const ShootResult r = propagate(params, lo, tol_position);
        if (r.outcome == ShootOutcome::Landed)
            return finalize_solution(params, r, 0, tol_position);
        if (r.outcome == ShootOutcome::Undershoot)
            break;
        lo *= 0.5;
        if (lo < lo_floor)
            throw no_solution_error(
                "shoot_solve: no undershoot above the x2 floor (no fixed point with x1=0, xN=L)",
                lo, 2.0 * h);
    }

    double hi = std::min(2.0 * h, length);
    for (;;) {
        const ShootResult r = propagate(params, hi, tol_position);
        if (r.outcome == ShootOutcome::Landed)
            return finalize_solution(params, r, 0, tol_position);
        if (r.outcome == ShootOutcome::Overshoot)
            break;
        if (hi >= length)
            throw no_solution_error(
                "shoot_solve: still undershooting at x2 = L (no fixed point with x1=0, xN=L)",
                lo, length);
        hi = std::min(2.0 * hi, length);
    }

    // x_N(x2) is continuous, escape counts as +inf, so bisection converges
    ShootResult best;
    int iterations = 0;
    for (; iterations < 200; ++iterations) {
        const double mid = 0.5 * (lo + hi);
        best = propagate(params, mid, tol_position);
        if (best.outcome == ShootOutcome::Landed)
            break;
        if (best.outcome == ShootOutcome::Undershoot)
            lo = mid;
        else
            hi = mid;
    }
    return finalize_solution(params, best, iterations, tol_position);
}

FixedPointResult shoot_solve(const ChainParams& params) {
    return shoot_solve(params, 1e-12 * params.length);
}

namespace {

struct InteriorCandidate {
    double x1 = 0.0;
    bool admissible = false; // F(x1) > 0 and the recursion stayed in range
    bool completed = false;  // reached particle N with x_N <= L
    double landing = 0.0;    // x_N - L (positive sentinel when aborted past L)
    double end_balance = 0.0; // f(last gap) + F(x_N), completed candidates only
};

// Recursion from x1 with the pinned first gap; aborts with a positive landing
// sign as soon as the chain provably exceeds L.
InteriorCandidate scan_interior(const ChainParams& params, double x1) {
    InteriorCandidate cand;
    cand.x1 = x1;
    const double fx1 = params.field.value(x1);
    if (!(fx1 > 0.0))
        return cand;

    double gap;
    try {
        gap = params.law.inverse_force(fx1);
    } catch (const std::out_of_range&) {
        return cand; // tabulated law cannot represent the pinned gap
    }
    cand.admissible = true;

    const int n = params.n;
    const double length = params.length;
    double x = x1 + gap;
    double transmitted = fx1;
    for (int k = 2; k <= n - 1; ++k) {
        if (x > length) {
            cand.landing = x - length; // only grows from here
            return cand;
        }
        transmitted += params.field.value(clamp01(x, length));
        if (transmitted <= 0.0) {
            cand.admissible = false; // escape: no equilibrium continuation
            return cand;
        }
        try {
            x += params.law.inverse_force(transmitted);
        } catch (const std::out_of_range&) {
            cand.admissible = false;
            return cand;
        }
    }
    cand.landing = x - length;
    if (x <= length) {
        cand.completed = true;
        cand.end_balance = transmitted + params.field.value(x);
    }
    return cand;
}

Configuration interior_witness(const ChainParams& params, double x1) {
    const double gap = params.law.inverse_force(params.field.value(x1));
    return propagate_from(params, x1, x1 + gap).positions;
}

} // namespace

InteriorBranchReport interior_branch(const ChainParams& params, int grid_size) {
    params.validate();
    if (grid_size < 2)
        throw std::invalid_argument("interior_branch: grid_size must be >= 2");

    const int n = params.n;
    const double length = params.length;
    InteriorBranchReport report;
    report.best_defect = kInf;

    // length lower bound: gap k exceeds the inverse force of C*k, C = sup F
    const double sup_f = params.field.sup(0.0, length);
    if (!(sup_f > 0.0)) {
        // F(x1) > 0 has no solution, so no fixed point can leave the wall
        report.divergence_lower_bound = kInf;
        report.certified_infeasible = true;
        return report;
    }
    double bound = 0.0;
    for (int k = 1; k <= n - 1 && bound <= length; ++k) {
        const double fk = sup_f * k;
        if (params.law.kind() == PairLaw::Kind::Power)
            bound += std::pow(fk, -1.0 / params.law.exponent());
        else if (fk < params.law.min_force())
            bound += params.law.inverse_force(params.law.min_force());
        else if (fk <= params.law.max_force())
            bound += params.law.inverse_force(fk);
        // beyond the table's force range the gap bound degrades to zero
    }
    report.divergence_lower_bound = bound;
    report.certified_infeasible = bound > length;
    if (report.certified_infeasible)
        return report;

    std::vector<InteriorCandidate> grid(grid_size);
    for (int i = 0; i < grid_size; ++i) {
        const double x1 = length * (i + 1) / (grid_size + 1);
        grid[i] = scan_interior(params, x1);
        if (grid[i].admissible)
            ++report.candidates_tested;
        if (grid[i].admissible && std::abs(grid[i].landing) < report.best_defect) {
            report.best_defect = std::abs(grid[i].landing);
            report.best_x1 = x1;
        }
    }

    const double defect_tol = 1e-9 * length;
    auto accept = [&](double x1) {
        report.feasible = true;
        report.best_x1 = x1;
        report.witness = interior_witness(params, x1);
        report.best_defect = std::abs(report.witness.back() - length);
    };

    // exact landings on the wall with the last particle held by it
    for (const auto& cand : grid)
        if (cand.admissible && cand.completed && std::abs(cand.landing) < defect_tol &&
            cand.end_balance >= 0.0) {
            accept(cand.x1);
            return report;
        }

    for (int i = 0; i + 1 < static_cast<int>(grid.size()); ++i) {
        const auto& a = grid[i];
        const auto& b = grid[i + 1];
        if (!a.admissible || !b.admissible)
            continue;

        // sign change of x_N(x1) - L: a wall-landing interior fixed point,
        // provided the wall actually holds the last particle
        if (a.landing < 0.0 && b.landing > 0.0) {
            double xl = a.x1, xr = b.x1;
            for (int it = 0; it < 80; ++it) {
                const double xm = 0.5 * (xl + xr);
                const auto c = scan_interior(params, xm);
                if (!c.admissible)
                    break;
                (c.landing < 0.0 ? xl : xr) = xm;
            }
            const auto c = scan_interior(params, xl);
            if (c.admissible && c.completed && std::abs(c.landing) < defect_tol &&
                c.end_balance >= 0.0) {
                accept(xl);
                return report;
            }
        }

        // sign change of the free-end balance with x_N strictly inside
        if (a.completed && b.completed &&
            ((a.end_balance < 0.0) != (b.end_balance < 0.0))) {
            double xl = a.x1, xr = b.x1;
            for (int it = 0; it < 80; ++it) {
                const double xm = 0.5 * (xl + xr);
                const auto c = scan_interior(params, xm);
                if (!c.completed)
                    break;
                ((c.end_balance < 0.0) == (a.end_balance < 0.0) ? xl : xr) = xm;
            }
            const auto c = scan_interior(params, xl);
            if (c.completed && std::abs(c.end_balance) < 1e-9 * sup_f * n) {
                accept(xl);
                report.best_defect = std::abs(c.end_balance);
                return report;
            }
        }
    }
    return report;
}

Configuration oracle_minimize(const ChainParams& params, Configuration init,
                              double tol_grad, long max_iterations) {
    params.validate();
    const int n = params.n;
    if (static_cast<int>(init.size()) != n)
        throw std::invalid_argument("oracle_minimize: init size does not match params.n");
    if (n > 10000)
        throw std::invalid_argument("oracle_minimize: dense minimization guarded to n <= 10000");
    for (int k = 0; k + 1 < n; ++k)
        if (!(init[k + 1] > init[k]))
            throw std::domain_error("oracle_minimize: init must be strictly increasing");

    const double length = params.length;
    const double gap_floor = 1e-14 * length;
    const double step0 = 0.1 * params.uniform_gap();

    auto energy = [&](const Configuration& x) {
        double w = 0.0;
        for (int k = 1; k < n; ++k)
            w += params.law.potential(x[k] - x[k - 1]);
        for (int k = 0; k < n; ++k)
            w -= params.field.integral_from_zero(x[k]);
        return w;
    };

    std::vector<double> dir(n);
    Configuration trial(n);
    double w_cur = energy(init);

    for (long iter = 0; iter < max_iterations; ++iter) {
        // steepest feasible descent direction: minus the W gradient, with
        // wall-blocked components zeroed
        double proj_norm = 0.0;
        for (int k = 0; k < n; ++k) {
            double g = -params.field.value(init[k]);
            if (k > 0)
                g -= params.law.force(init[k] - init[k - 1]);
            if (k + 1 < n)
                g += params.law.force(init[k + 1] - init[k]);
            double d = -g;
            if (init[k] <= 0.0)
                d = std::max(d, 0.0);
            if (init[k] >= length)
                d = std::min(d, 0.0);
            dir[k] = d;
            proj_norm = std::max(proj_norm, std::abs(d));
        }
        if (proj_norm < tol_grad)
            return init;

        // backtracking: halve the step until the move keeps every gap open
        // and strictly lowers W
        double t = step0;
        bool accepted = false;
        for (int halving = 0; halving < 60; ++halving, t *= 0.5) {
            bool ordered = true;
            for (int k = 0; k < n; ++k)
                trial[k] = std::clamp(init[k] + t * dir[k], 0.0, length);
            for (int k = 0; k + 1 < n && ordered; ++k)
                ordered = trial[k + 1] - trial[k] > gap_floor;
            if (!ordered)
                continue;
            const double w_trial = energy(trial);
            if (w_trial < w_cur) {
                init.swap(trial);
                w_cur = w_trial;
                accepted = true;
                break;
            }
        }
        if (!accepted)
            throw nonconvergence_error(
                "oracle_minimize: line search stalled above tolerance", init);
    }
    throw nonconvergence_error("oracle_minimize: iteration cap exceeded", init);
}

Configuration zero_force_solution(int n, double length) {
    if (n < 2)
        throw std::invalid_argument("zero_force_solution: n must be >= 2");
    Configuration x(n);
    for (int k = 0; k < n; ++k)
        x[k] = length * k / (n - 1);
    return x;
}

ForceField degenerate_three_body_field(const PairLaw& law, double y, int table_points) {
    if (!(y > 0.0 && y < 0.5))
        throw std::domain_error("degenerate_three_body_field: y must lie in (0, 1/2)");
    if (table_points < 2)
        throw std::invalid_argument("degenerate_three_body_field: need at least 2 table points");
    std::vector<std::pair<double, double>> pts(table_points);
    for (int i = 0; i < table_points; ++i) {
        const double x = y + (1.0 - 2.0 * y) * i / (table_points - 1);
        pts[i] = {x, law.force(1.0 - x) - law.force(x)};
    }
    return ForceField::piecewise_linear(std::move(pts));
}

} // namespace chaineq
