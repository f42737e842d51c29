#include "wfsim/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <numbers>

#include "wfsim/report.hpp"
#include "wfsim/rng.hpp"

namespace wfsim {

namespace {

/// Per-subcommand flag storage plus the CLI11 option handles needed to tell
/// "explicitly passed" apart from "left at default".
struct FlagSet {
    std::string config_path;
    std::string scenario;
    std::string theta;
    std::string model;
    std::string query;
    std::size_t trajectories = 0;
    std::uint64_t seed = 0;
    std::string output;
    std::string out_path;

    CLI::Option* scenario_opt = nullptr;
    CLI::Option* theta_opt = nullptr;
    CLI::Option* model_opt = nullptr;
    CLI::Option* query_opt = nullptr;
    CLI::Option* trajectories_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* output_opt = nullptr;
};

void add_common_flags(CLI::App* cmd, FlagSet& flags) {
    cmd->add_option("--config", flags.config_path, "scenario file (flat key = value lines)");
    flags.scenario_opt = cmd->add_option("--scenario", flags.scenario, "wigner | necker");
    flags.theta_opt =
        cmd->add_option("--theta", flags.theta, "angle in radians, or one of pi/2, pi/3, pi/4, pi/6");
    flags.model_opt = cmd->add_option("--model", flags.model, "unitary | collapse");
    flags.query_opt = cmd->add_option("--query", flags.query, "definite | which");
    flags.trajectories_opt = cmd->add_option("--trajectories", flags.trajectories, "Monte-Carlo sample count");
    flags.seed_opt = cmd->add_option("--seed", flags.seed, "master seed for trajectory generators");
    flags.output_opt = cmd->add_option("--output", flags.output, "json | csv | text");
    cmd->add_option("--out", flags.out_path, "write the report to this file instead of stdout");
}

ScenarioConfig resolve_config(const FlagSet& flags) {
    ScenarioConfig config =
        flags.config_path.empty() ? default_config() : load_scenario_file(flags.config_path);
    if (flags.scenario_opt->count() > 0) config.scenario = flags.scenario;
    if (flags.theta_opt->count() > 0) config.theta = parse_angle(flags.theta);
    if (flags.model_opt->count() > 0) {
        config.model = flags.model;
        // An explicit switch to unitary dynamics drops a file-provided
        // collapse step rather than tripping the required-iff check.
        if (flags.model == "unitary") config.collapse_step.clear();
    }
    if (flags.query_opt->count() > 0) config.query = flags.query;
    if (flags.trajectories_opt->count() > 0) config.n_trajectories = flags.trajectories;
    if (flags.seed_opt->count() > 0) config.master_seed = flags.seed;
    if (flags.output_opt->count() > 0) config.output = flags.output;
    if (config.model == "collapse" && config.collapse_step.empty() && config.scenario == "wigner") {
        config.collapse_step = "bob_observes";
    }
    config.validate();
    return config;
}

void emit(const std::string& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        throw std::invalid_argument(fmt::format("out: cannot open '{}' for writing", out_path));
    }
    file << report;
    if (!file) {
        throw std::invalid_argument(fmt::format("out: write to '{}' failed", out_path));
    }
}

void do_run(const FlagSet& flags) {
    ScenarioConfig config = resolve_config(flags);
    ProtocolScript script = make_script(config);
    DynamicsModel model = make_model(config, script);
    std::mt19937_64 rng = trajectory_rng(config.master_seed, 0);
    RunTrace trace = run_script(script, model, rng);
    emit(render_run_report(config, script, trace), flags.out_path);
}

void do_bet(const FlagSet& flags) {
    ScenarioConfig config = resolve_config(flags);
    ProtocolScript script = make_script(config);

    // The bet always pits both models against each other, whatever the
    // configured model says.
    ScenarioConfig collapse_config = config;
    collapse_config.model = "collapse";
    if (collapse_config.collapse_step.empty() && config.scenario == "wigner") {
        collapse_config.collapse_step = "bob_observes";
    }
    DynamicsModel collapse_model = make_model(collapse_config, script);

    BetPair pair;
    pair.unitary =
        run_trajectories(script, DynamicsModel::unitary_only(), config.n_trajectories, config.master_seed);
    pair.collapse = run_trajectories(script, collapse_model, config.n_trajectories, config.master_seed);
    pair.power = distinguishing_power(pair.unitary, pair.collapse);

    std::mt19937_64 rng = trajectory_rng(config.master_seed, 0);
    RunTrace reference = run_script(script, DynamicsModel::unitary_only(), rng);
    emit(render_bet_report(config, script, reference, pair), flags.out_path);
}

void do_sweep(const FlagSet& flags, const std::string& theta_min_text, const std::string& theta_max_text,
              std::size_t steps) {
    ScenarioConfig config = resolve_config(flags);
    const double theta_min = parse_angle(theta_min_text);
    const double theta_max = parse_angle(theta_max_text);
    if (!(theta_min > 0.0 && theta_min < theta_max && theta_max < std::numbers::pi)) {
        throw std::invalid_argument(
            fmt::format("sweep: require 0 < theta-min < theta-max < pi, got [{:.17g}, {:.17g}]", theta_min,
                        theta_max));
    }
    if (steps < 2) {
        throw std::invalid_argument("steps: must be >= 2");
    }

    std::vector<double> grid;
    grid.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        grid.push_back(theta_min +
                       (theta_max - theta_min) * static_cast<double>(i) / static_cast<double>(steps - 1));
    }
    std::vector<SweepRow> rows = entropy_sweep(grid);

    // The sweep is wigner / unitary / definite by construction.
    config.scenario = "wigner";
    config.model = "unitary";
    config.query = "definite";
    config.collapse_step.clear();
    config.theta = theta_min;
    emit(render_sweep_report(config, SweepParams{theta_min, theta_max, steps}, rows), flags.out_path);
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"wfsim: a reversible cat-box protocol simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(artifact_version));

    FlagSet run_flags;
    CLI::App* run_cmd = app.add_subcommand("run", "execute one scripted run and report its trace");
    add_common_flags(run_cmd, run_flags);
    run_cmd->callback([&run_flags] { do_run(run_flags); });

    FlagSet bet_flags;
    CLI::App* bet_cmd = app.add_subcommand("bet", "run both dynamics models and compare their statistics");
    add_common_flags(bet_cmd, bet_flags);
    bet_cmd->callback([&bet_flags] { do_bet(bet_flags); });

    FlagSet sweep_flags;
    std::string theta_min_text = "pi/6";
    std::string theta_max_text = "pi/2";
    std::size_t steps = 25;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "tabulate entropy, record purity and return fidelity");
    add_common_flags(sweep_cmd, sweep_flags);
    sweep_cmd->add_option("--theta-min", theta_min_text, "sweep start (exclusive of 0)");
    sweep_cmd->add_option("--theta-max", theta_max_text, "sweep end (exclusive of pi)");
    sweep_cmd->add_option("--steps", steps, "number of grid points (>= 2)");
    sweep_cmd->callback([&sweep_flags, &theta_min_text, &theta_max_text, &steps] {
        do_sweep(sweep_flags, theta_min_text, theta_max_text, steps);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const invariant_violation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace wfsim
