// Batch front-end: reads a scenario config, runs UMR / retention / sweep
// computations, writes CSV tables and optional SVG plots.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ruinlab/ruinlab.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitInfeasible = 4;
constexpr int kExitIo = 5;

struct Overrides {
    std::optional<double> u;
    std::optional<double> epsilon;
    std::optional<int> k_cap;
    std::optional<double> x;
};

ruinlab::AlphaClip clip_from_env() {
    ruinlab::AlphaClip clip;
    if (const char* env = std::getenv("RUINLAB_ALPHA_CLIP")) {
        clip.delta = std::strtod(env, nullptr);
        ruinlab::validate(clip);
    }
    return clip;
}

ruinlab::ScenarioConfig load_config(const std::string& path, const Overrides& ov,
                                    ruinlab::AlphaClip clip) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ruinlab::validation_error(path + ": " + e.what());
    }
    auto cfg = ruinlab::parse_scenario_config(j, clip);
    if (ov.u) cfg.scenario.u = *ov.u;
    if (ov.epsilon) cfg.epsilon = *ov.epsilon;
    if (ov.k_cap) cfg.scenario.k_cap = *ov.k_cap;
    if (ov.x) cfg.retention_x = *ov.x;
    // Re-check after overrides.
    ruinlab::validate(cfg.scenario, clip);
    if (cfg.epsilon && !(*cfg.epsilon > 0.0 && *cfg.epsilon < 1.0))
        throw ruinlab::validation_error("epsilon: must lie in (0,1)");
    if (cfg.retention_x && !(*cfg.retention_x >= 0.0 && *cfg.retention_x <= 1.0))
        throw ruinlab::validation_error("retention_x: must lie in [0,1]");
    return cfg;
}

ruinlab::ReinsuranceTerms umr_terms(const ruinlab::ScenarioConfig& cfg) {
    if (cfg.rho && cfg.theta)
        return {*cfg.rho, *cfg.theta, cfg.retention_x.value_or(1.0)};
    return ruinlab::ReinsuranceTerms::no_reinsurance();
}

ruinlab::RetentionProblem make_problem(const ruinlab::ScenarioConfig& cfg) {
    ruinlab::RetentionProblem p;
    p.scenario = cfg.scenario;
    p.rho = cfg.rho.value_or(0.0);
    p.theta = cfg.theta.value_or(0.0);
    p.epsilon = cfg.epsilon.value_or(0.005);
    p.perturbation = cfg.perturbation;
    p.fixed_x = cfg.retention_x;
    return p;
}

int run_umr(const ruinlab::ScenarioConfig& cfg, ruinlab::AlphaClip clip) {
    const auto rep =
        ruinlab::umr_perturbed(cfg.scenario, umr_terms(cfg), cfg.perturbation, clip);
    std::cout << "alpha=" << ruinlab::detail::fmt12(rep.alpha) << " k_at_max=" << rep.k_at_max
              << " converged_in_k=" << (rep.converged_in_k ? "true" : "false") << '\n';
    return kExitOk;
}

int run_retention(const ruinlab::ScenarioConfig& cfg, ruinlab::AlphaClip clip) {
    if (!cfg.rho || !cfg.theta)
        throw ruinlab::validation_error("rho/theta: required for the retention subcommand");
    if (!cfg.epsilon)
        throw ruinlab::validation_error("epsilon: required for the retention subcommand");
    const auto res = ruinlab::optimal_retention(make_problem(cfg), clip);
    std::cout << "x_star=" << ruinlab::detail::fmt12(res.x_star)
              << " objective=" << ruinlab::detail::fmt12(res.objective)
              << " umr_at_x=" << ruinlab::detail::fmt12(res.umr_at_x)
              << " binding=" << (res.binding ? "true" : "false") << " method="
              << (res.method == ruinlab::RetentionMethod::boundary_bisection
                      ? "boundary_bisection"
                      : "grid_scan")
              << '\n';
    return kExitOk;
}

int run_sweep(const ruinlab::ScenarioConfig& cfg, const std::string& axis_name, double from,
              double to, int points, const std::string& out_path,
              const std::string& plot_path, unsigned jobs, ruinlab::AlphaClip clip) {
    if (points < 2) throw ruinlab::validation_error("--points must be >= 2");
    if (!(from < to)) throw ruinlab::validation_error("--from must be less than --to");
    ruinlab::SweepAxis axis;
    if (axis_name == "u")
        axis = ruinlab::SweepAxis::u;
    else if (axis_name == "k")
        axis = ruinlab::SweepAxis::k_cap;
    else if (axis_name == "x")
        axis = ruinlab::SweepAxis::x;
    else
        throw ruinlab::validation_error("--axis must be one of u, k, x");

    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i)
        grid[i] = from + (to - from) * i / (points - 1);
    if (axis == ruinlab::SweepAxis::k_cap) {
        // Round to integers and drop duplicates so the grid stays strict.
        std::vector<double> g;
        for (double v : grid) {
            const double r = std::max(1.0, std::round(v));
            if (g.empty() || r > g.back()) g.push_back(r);
        }
        grid = std::move(g);
    }

    const auto rows = ruinlab::sweep(make_problem(cfg), axis, grid, jobs, clip);

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open output file: " + out_path);
    ruinlab::write_sweep_csv(out, axis, rows);
    out.flush();
    if (!out) throw std::ios_base::failure("write failed: " + out_path);

    if (!plot_path.empty()) {
        std::ofstream svg(plot_path, std::ios::binary);
        if (!svg) throw std::ios_base::failure("cannot open plot file: " + plot_path);
        const bool plot_x_star =
            axis != ruinlab::SweepAxis::x &&
            std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.x_star.has_value(); });
        ruinlab::write_sweep_svg(svg, axis, rows, plot_x_star);
        if (!svg) throw std::ios_base::failure("write failed: " + plot_path);
    }

    const bool all_failed =
        std::all_of(rows.begin(), rows.end(), [](const auto& r) { return !r.error.empty(); });
    return all_failed ? kExitNumerical : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"uncertain measure of ruin and optimal reinsurance retention"};
    app.require_subcommand(1);

    std::string config_path;
    Overrides ov;
    bool dump_config = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "scenario config (JSON)")->required();
        cmd->add_option("--u", ov.u, "override initial capital");
        cmd->add_option("--epsilon", ov.epsilon, "override the UMR ceiling");
        cmd->add_option("--k-cap", ov.k_cap, "override the partial-sum truncation");
        cmd->add_option("--x", ov.x, "override the retention");
        cmd->add_flag("--dump-config", dump_config, "print the normalized config and exit");
    };

    auto* cmd_umr = app.add_subcommand("umr", "compute the uncertain measure of ruin");
    add_common(cmd_umr);

    auto* cmd_retention = app.add_subcommand("retention", "solve for the optimal retention");
    add_common(cmd_retention);

    auto* cmd_sweep = app.add_subcommand("sweep", "sweep one axis, write CSV/SVG");
    add_common(cmd_sweep);
    std::string axis_name, out_path = "sweep.csv", plot_path;
    double from = 0.0, to = 0.0;
    int points = 0;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    cmd_sweep->add_option("--axis", axis_name, "sweep axis: u, k or x")->required();
    cmd_sweep->add_option("--from", from, "grid start")->required();
    cmd_sweep->add_option("--to", to, "grid end")->required();
    cmd_sweep->add_option("--points", points, "grid size")->required();
    cmd_sweep->add_option("--out", out_path, "CSV output path");
    cmd_sweep->add_option("--plot", plot_path, "optional SVG output path");
    cmd_sweep->add_option("--jobs", jobs, "worker pool size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        const auto clip = clip_from_env();
        const auto cfg = load_config(config_path, ov, clip);
        if (dump_config) {
            std::cout << ruinlab::to_json(cfg).dump(2) << '\n';
            return kExitOk;
        }
        if (cmd_umr->parsed()) return run_umr(cfg, clip);
        if (cmd_retention->parsed()) return run_retention(cfg, clip);
        return run_sweep(cfg, axis_name, from, to, points, out_path, plot_path,
                         jobs == 0 ? 1 : jobs, clip);
    } catch (const ruinlab::no_feasible_retention& e) {
        std::cerr << "error: " << e.what()
                  << " (min grid UMR = " << ruinlab::detail::fmt12(e.min_grid_umr()) << ")\n";
        return kExitInfeasible;
    } catch (const ruinlab::validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ruinlab::numerical_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}
