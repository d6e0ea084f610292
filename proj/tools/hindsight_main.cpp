#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hindsight/errors.hpp"
#include "hindsight/runner.hpp"
#include "hindsight/synthetic.hpp"

namespace {

struct GlobalArgs {
    std::string config_path;
    std::string out_dir;   // empty -> the config's output_dir
    bool no_heuristics = false;
    bool sync = false;
    std::uint64_t seed = 42;
};

hindsight::RunConfig load_config(const GlobalArgs& args) {
    if (args.config_path.empty())
        throw hindsight::DomainError("--config is required for this subcommand");
    auto config = hindsight::load_run_config(args.config_path);
    if (args.no_heuristics) config.use_heuristics = false;
    if (args.sync) config.sync = true;
    return config;
}

std::string out_dir_of(const GlobalArgs& args, const hindsight::RunConfig& config) {
    return args.out_dir.empty() ? config.output_dir : args.out_dir;
}

hindsight::ConstraintMode mode_of(const std::string& name, int limit) {
    if (name == "unconstrained") return hindsight::ConstraintMode::unconstrained();
    if (name == "max_trades") return hindsight::ConstraintMode::max_trades(limit);
    if (name == "min_wait") return hindsight::ConstraintMode::min_wait(limit);
    throw hindsight::DomainError("unknown mode '" + name +
                                 "'; expected unconstrained, max_trades or min_wait");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hindsight: optimal-in-hindsight trading trajectories under transaction costs"};
    app.require_subcommand(1);
    app.fallthrough();   // accept the global flags after the subcommand name too

    GlobalArgs args;
    app.add_option("--config", args.config_path, "Path to a JSON run configuration")
        ->envname("HINDSIGHT_CONFIG");
    app.add_option("--out", args.out_dir, "Output directory (default: the config's output_dir)");
    app.add_flag("--no-heuristics", args.no_heuristics, "Disable the state-pruning heuristics");
    app.add_flag("--sync", args.sync, "Restrict diversified slices to the primary slice's trade times");
    app.add_option("--seed", args.seed, "Seed for synthetic instances");

    auto* optimize =
        app.add_subcommand("optimize", "Solve the configured instance; export reports, labels, stats");

    auto* baseline = app.add_subcommand("baseline", "Buy-and-hold baseline for one asset");
    int baseline_asset = -1;
    baseline->add_option("--asset", baseline_asset, "Asset id (default: the first asset)");

    auto* sweep = app.add_subcommand("sweep", "Re-solve across proportional-cost levels");
    std::vector<double> eps_pct{0.0, 0.5, 1.0, 2.0};
    sweep->add_option("--eps-pct", eps_pct, "Proportional cost levels, in percent")
        ->expected(-1);

    auto* stats = app.add_subcommand("stats", "State-count statistics, measured and predicted");
    std::string synthetic_spec;
    stats->add_option("--synthetic", synthetic_spec,
                      "Synthetic instance 'Nc,Na,Nt' (runs without --config)");
    std::string mode_name = "unconstrained";
    int mode_limit = 1;
    double synthetic_m0 = 1000.0;
    stats->add_option("--mode", mode_name, "unconstrained | max_trades | min_wait (synthetic path)");
    stats->add_option("--limit", mode_limit, "K or D for the constrained modes (synthetic path)");
    stats->add_option("--m0", synthetic_m0, "Initial cash for the synthetic path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (optimize->parsed()) {
            const auto config = load_config(args);
            std::cout << hindsight::run_optimize(config, out_dir_of(args, config)).stdout_text;
        } else if (baseline->parsed()) {
            const auto config = load_config(args);
            std::cout
                << hindsight::run_baseline(config, baseline_asset, out_dir_of(args, config)).stdout_text;
        } else if (sweep->parsed()) {
            const auto config = load_config(args);
            std::cout << hindsight::run_sweep(config, eps_pct, out_dir_of(args, config)).stdout_text;
        } else if (stats->parsed()) {
            if (!synthetic_spec.empty()) {
                int nc = 0, na = 0, nt = 0;
                if (std::sscanf(synthetic_spec.c_str(), "%d,%d,%d", &nc, &na, &nt) != 3)
                    throw hindsight::DomainError("--synthetic expects 'Nc,Na,Nt'");
                const auto panel = hindsight::synthetic_panel(args.seed, nc, na, nt);
                const auto costs = hindsight::CostSchedule::uniform(panel.universe, 0.0, 0.0);
                std::cout << hindsight::stats_for_panel(panel, costs, mode_of(mode_name, mode_limit),
                                                        synthetic_m0, !args.no_heuristics);
            } else {
                const auto config = load_config(args);
                std::cout << hindsight::run_stats(config, out_dir_of(args, config));
            }
        }
    } catch (const hindsight::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const hindsight::InfeasibleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const hindsight::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const hindsight::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
