#include "chaineq/config.hpp"

#include <charconv>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "chaineq/errors.hpp"

namespace chaineq {

namespace {

using nlohmann::json;

void require_known_keys(const json& obj, const char* ctx,
                        std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (key == k) {
                known = true;
                break;
            }
        if (!known)
            throw config_error(std::string(ctx) + ": unknown key \"" + key + "\"");
    }
}

std::vector<std::pair<double, double>> parse_points(const json& arr, const char* ctx) {
    if (!arr.is_array())
        throw config_error(std::string(ctx) + ": points must be an array of [x, y] pairs");
    std::vector<std::pair<double, double>> pts;
    pts.reserve(arr.size());
    for (const auto& p : arr) {
        if (!p.is_array() || p.size() != 2)
            throw config_error(std::string(ctx) + ": each point must be a [x, y] pair");
        pts.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    return pts;
}

PairLaw parse_pair_law(const json& j) {
    require_known_keys(j, "pair_law", {"kind", "alpha", "a", "points", "tail_potential"});
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "power")
        return PairLaw::power(j.value("alpha", 1.0), j.value("a", 2.0));
    if (kind == "table")
        return PairLaw::tabulated(parse_points(j.at("points"), "pair_law"),
                                  j.value("tail_potential", 0.0));
    throw config_error("pair_law: unknown kind \"" + kind + "\"");
}

ForceField parse_force_field(const json& j, double length) {
    require_known_keys(j, "force_field",
                       {"kind", "value", "c0", "c1", "points", "monotone_nonincreasing"});
    const std::string kind = j.at("kind").get<std::string>();
    ForceField field = ForceField::constant(0.0);
    if (kind == "constant")
        field = ForceField::constant(j.value("value", 0.0));
    else if (kind == "affine")
        field = ForceField::affine(j.value("c0", 0.0), j.value("c1", 0.0));
    else if (kind == "table")
        field = ForceField::piecewise_linear(parse_points(j.at("points"), "force_field"));
    else
        throw config_error("force_field: unknown kind \"" + kind + "\"");
    if (j.value("monotone_nonincreasing", false))
        field.declare_monotone_nonincreasing(0.0, length);
    return field;
}

InitSpec parse_init(const json& j) {
    require_known_keys(j, "init",
                       {"kind", "seed", "max_speed", "margin", "positions", "velocities"});
    InitSpec init;
    const std::string kind = j.value("kind", "equispaced");
    if (kind == "equispaced") {
        init.kind = InitSpec::Kind::Equispaced;
    } else if (kind == "random") {
        init.kind = InitSpec::Kind::Random;
        init.seed = j.value("seed", 1ul);
        init.max_speed = j.value("max_speed", 0.5);
        init.margin = j.value("margin", 0.05);
    } else if (kind == "explicit") {
        init.kind = InitSpec::Kind::Explicit;
        init.positions = j.at("positions").get<Configuration>();
        if (j.contains("velocities"))
            init.velocities = j.at("velocities").get<std::vector<double>>();
    } else {
        throw config_error("init: unknown kind \"" + kind + "\"");
    }
    return init;
}

} // namespace

RunConfig parse_run_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw config_error(std::string("config: invalid JSON: ") + e.what());
    }

    try {
        require_known_keys(doc, "config",
                           {"params", "solve", "simulate", "sweep", "verify",
                            "degenerate", "output_dir"});
        RunConfig cfg;
        if (doc.contains("params")) {
            const json& p = doc["params"];
            require_known_keys(p, "params",
                               {"n", "length", "mass", "damping", "pair_law", "force_field"});
            cfg.params.n = p.value("n", cfg.params.n);
            cfg.params.length = p.value("length", cfg.params.length);
            cfg.params.mass = p.value("mass", cfg.params.mass);
            cfg.params.damping = p.value("damping", cfg.params.damping);
            if (p.contains("pair_law"))
                cfg.params.law = parse_pair_law(p["pair_law"]);
            if (p.contains("force_field"))
                cfg.params.field = parse_force_field(p["force_field"], cfg.params.length);
            cfg.params.validate();
        }
        if (doc.contains("solve")) {
            const json& s = doc["solve"];
            require_known_keys(s, "solve", {"tol_position", "tol_residual"});
            cfg.solve.tol_position = s.value("tol_position", cfg.solve.tol_position);
            cfg.solve.tol_residual = s.value("tol_residual", cfg.solve.tol_residual);
        }
        if (doc.contains("simulate")) {
            const json& s = doc["simulate"];
            require_known_keys(s, "simulate", {"t_end", "sample_dt", "dt", "init"});
            cfg.simulate.t_end = s.value("t_end", cfg.simulate.t_end);
            cfg.simulate.sample_dt = s.value("sample_dt", cfg.simulate.sample_dt);
            cfg.simulate.dt = s.value("dt", cfg.simulate.dt);
            if (s.contains("init"))
                cfg.simulate.init = parse_init(s["init"]);
        }
        if (doc.contains("sweep")) {
            const json& s = doc["sweep"];
            require_known_keys(s, "sweep", {"n_list"});
            if (s.contains("n_list"))
                cfg.sweep.n_list = s["n_list"].get<std::vector<int>>();
        }
        if (doc.contains("verify")) {
            const json& s = doc["verify"];
            require_known_keys(s, "verify", {"suites"});
            if (s.contains("suites"))
                cfg.verify.suites = s["suites"].get<std::vector<std::string>>();
        }
        if (doc.contains("degenerate")) {
            const json& s = doc["degenerate"];
            require_known_keys(s, "degenerate", {"y", "samples", "table_points"});
            cfg.degenerate.y = s.value("y", cfg.degenerate.y);
            cfg.degenerate.samples = s.value("samples", cfg.degenerate.samples);
            cfg.degenerate.table_points = s.value("table_points", cfg.degenerate.table_points);
        }
        cfg.output_dir = doc.value("output_dir", std::string());
        return cfg;
    } catch (const config_error&) {
        throw;
    } catch (const json::exception& e) {
        throw config_error(std::string("config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("config: ") + e.what());
    } catch (const std::domain_error& e) {
        throw config_error(std::string("config: ") + e.what());
    }
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw config_error("config: cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str());
}

ChainState make_initial_state(const ChainParams& params, const InitSpec& init) {
    const int n = params.n;
    ChainState state;
    switch (init.kind) {
    case InitSpec::Kind::Equispaced:
        state.positions = zero_force_solution(n, params.length);
        state.velocities.assign(n, 0.0);
        break;
    case InitSpec::Kind::Random: {
        if (!(init.margin >= 0.0 && init.margin < 0.5))
            throw config_error("init: margin must lie in [0, 0.5)");
        std::mt19937_64 rng(init.seed);
        std::uniform_real_distribution<double> gap_draw(0.2, 1.0);
        std::uniform_real_distribution<double> speed_draw(-init.max_speed, init.max_speed);
        // draw positive gaps and map their cumulative sums into the margins,
        // which keeps the configuration ordered with bounded gaps
        std::vector<double> cum(n);
        double acc = 0.0;
        for (int k = 0; k < n; ++k) {
            acc += k == 0 ? 0.0 : gap_draw(rng);
            cum[k] = acc;
        }
        const double lo = init.margin * params.length;
        const double hi = (1.0 - init.margin) * params.length;
        state.positions.resize(n);
        for (int k = 0; k < n; ++k)
            state.positions[k] = lo + (hi - lo) * cum[k] / cum.back();
        state.velocities.resize(n);
        for (int k = 0; k < n; ++k)
            state.velocities[k] = speed_draw(rng);
        break;
    }
    case InitSpec::Kind::Explicit:
        if (static_cast<int>(init.positions.size()) != n)
            throw config_error("init: explicit positions must have n entries");
        state.positions = init.positions;
        if (init.velocities.empty())
            state.velocities.assign(n, 0.0);
        else if (static_cast<int>(init.velocities.size()) == n)
            state.velocities = init.velocities;
        else
            throw config_error("init: explicit velocities must have n entries");
        break;
    }
    return state;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_positions_csv(const std::string& path, const Configuration& positions) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << "index,position,gap\n";
    for (std::size_t k = 0; k < positions.size(); ++k) {
        out << (k + 1) << ',' << format_double(positions[k]) << ',';
        if (k + 1 < positions.size())
            out << format_double(positions[k + 1] - positions[k]);
        out << '\n';
    }
}

void write_trajectory_csv(const std::string& path, const TrajectoryRecord& record) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << "t,H,rho,events\n";
    for (const auto& s : record.samples)
        out << format_double(s.t) << ',' << format_double(s.energy) << ','
            << format_double(s.rho) << ',' << s.wall_events << '\n';
}

void write_wall_events_csv(const std::string& path, const std::vector<WallEvent>& events) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << "t,side,v_pre\n";
    for (const auto& e : events)
        out << format_double(e.time) << ','
            << (e.side == WallSide::Left ? "left" : "right") << ','
            << format_double(e.v_pre) << '\n';
}

void write_report_csv(const std::string& path, const SweepReport& report) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << "N,D,E,b_measured,b_predicted\n";
    for (const auto& r : report.records)
        out << r.n << ',' << format_double(r.d_max) << ',' << format_double(r.e_rel)
            << ',' << format_double(r.b_measured) << ',' << format_double(r.b_predicted)
            << '\n';
}

std::string fixed_point_result_json(const FixedPointResult& result) {
    json j;
    j["x2"] = result.x2;
    j["positions"] = result.positions;
    j["residual_max"] = result.residual_max;
    j["iterations"] = result.bisection_iterations;
    j["boundary_ok"] = {result.boundary_ok_left, result.boundary_ok_right};
    j["suspected_nonunique"] = result.suspected_nonunique;
    return j.dump(2);
}

} // namespace chaineq
