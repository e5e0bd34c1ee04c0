#ifndef CHAINEQ_CONFIG_HPP
#define CHAINEQ_CONFIG_HPP

#include <string>
#include <vector>

#include "chaineq/analysis.hpp"
#include "chaineq/chain_params.hpp"
#include "chaineq/dynamics.hpp"
#include "chaineq/fixed_point.hpp"

namespace chaineq {

/*
 * One JSON document drives every subcommand. Unknown keys are rejected so a
 * typo cannot silently fall back to a default. All randomness is seeded from
 * the config; identical configs produce byte-identical artifacts.
 */

struct SolveConfig {
    double tol_position = -1.0; // < 0: 1e-12 * L
    double tol_residual = -1.0; // < 0: 1e-8 * f(L/(N-1))
};

struct InitSpec {
    enum class Kind { Equispaced, Random, Explicit };
    Kind kind = Kind::Equispaced;
    unsigned long seed = 1;
    double max_speed = 0.5;
    double margin = 0.05; // random positions kept in [margin*L, (1-margin)*L]
    Configuration positions;
    std::vector<double> velocities;
};

struct SimulateConfig {
    double t_end = 50.0;
    double sample_dt = 0.05;
    double dt = 0.0; // 0: default_timestep
    InitSpec init;
};

struct SweepConfig {
    std::vector<int> n_list = {50, 100, 200, 400};
};

struct VerifyConfig {
    std::vector<std::string> suites = {"all"};
};

struct DegenerateConfig {
    double y = 0.25;
    int samples = 33;
    int table_points = 4096;
};

struct RunConfig {
    ChainParams params{8, 1.0, 1.0, 1.0, PairLaw::power(1.0, 2.0),
                       ForceField::constant(1.0)};
    SolveConfig solve;
    SimulateConfig simulate;
    SweepConfig sweep;
    VerifyConfig verify;
    DegenerateConfig degenerate;
    std::string output_dir;
};

// Parse/load a config document; malformed input throws config_error.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

// Deterministic initial state for the simulate command.
ChainState make_initial_state(const ChainParams& params, const InitSpec& init);

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

void write_positions_csv(const std::string& path, const Configuration& positions);
void write_trajectory_csv(const std::string& path, const TrajectoryRecord& record);
void write_wall_events_csv(const std::string& path, const std::vector<WallEvent>& events);
void write_report_csv(const std::string& path, const SweepReport& report);

std::string fixed_point_result_json(const FixedPointResult& result);

} // namespace chaineq

#endif
