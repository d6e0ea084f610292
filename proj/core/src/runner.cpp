#include "hindsight/runner.hpp"
#include "hindsight/errors.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace hindsight {

namespace {

std::string fmt_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string fmt_fixed1(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::filesystem::path prepare_dir(const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());
    return {out_dir};
}

PortfolioResult solve_configured(const RunConfig& config, const MarketPanel& panel,
                                 const CostSchedule& costs) {
    SolveOptions base;
    base.use_heuristics = config.use_heuristics;
    base.force_terminal_cash = config.force_terminal_cash;
    return config.sync ? solve_portfolio_sync(panel, costs, config.mode, config.m0, config.plan, base)
                       : solve_portfolio(panel, costs, config.mode, config.m0, config.plan, base);
}

std::string plot_series_csv(const MarketPanel& panel, const PortfolioResult& portfolio) {
    std::string out = "series,key,date,value\n";
    const int nc = panel.universe.n_currencies();
    for (int c = 1; c < nc; ++c)
        for (int t = 0; t < panel.n_times(); ++t)
            out += "fx_delta," + std::to_string(c) + "," + format_date(panel.dates[t]) + "," +
                   fmt_double(panel.fx_to_ref[c][t] / panel.fx_to_ref[c][0] - 1.0) + "\n";
    for (int a = 0; a < panel.universe.n_assets(); ++a) {
        const int id = nc + a;
        const int ccy = panel.universe.settlement_currency(id);
        const double base = panel.prices[a][0] * panel.cross_rate(ccy, 0, 0);
        for (int t = 0; t < panel.n_times(); ++t) {
            const double ref_price = panel.prices[a][t] * panel.cross_rate(ccy, 0, t);
            out += "price_delta," + std::to_string(id) + "," + format_date(panel.dates[t]) + "," +
                   fmt_double(ref_price / base - 1.0) + "\n";
        }
    }
    for (std::size_t q = 0; q < portfolio.runs.size(); ++q) {
        const Trajectory& traj = portfolio.runs[q].trajectory;
        const double w0 = traj.states.front().wealth;
        for (int t = 0; t < panel.n_times(); ++t) {
            const std::string date = format_date(panel.dates[t]);
            out += "investment,q" + std::to_string(q) + "," + date + "," +
                   std::to_string(traj.states[t].id) + "\n";
            out += "return_pct,q" + std::to_string(q) + "," + date + "," +
                   fmt_double(100.0 * (traj.states[t].wealth - w0) / w0) + "\n";
        }
    }
    return out;
}

nlohmann::ordered_json stats_json_with_prediction(const SolveStats& stats,
                                                  const ConstraintMode& mode,
                                                  const MarketPanel& panel) {
    auto j = nlohmann::ordered_json::parse(stats_to_json(stats));
    j["predicted_total_states"] =
        predicted_state_count(mode, panel.universe.n_investments(), panel.horizon());
    return j;
}

} // namespace

OptimizeOutcome run_optimize(const RunConfig& config, const std::string& out_dir) {
    const auto dir = prepare_dir(out_dir);
    const CostSchedule costs = costs_of(config);
    const MarketPanel panel = load_panel(config);

    OptimizeOutcome outcome;
    outcome.portfolio = solve_configured(config, panel, costs);

    nlohmann::ordered_json summary;
    summary["mode"] = config.mode.describe();
    summary["sync"] = config.sync;
    summary["heuristics"] = config.use_heuristics;
    summary["q"] = config.plan.q;
    summary["slices"] = nlohmann::ordered_json::array();

    for (std::size_t q = 0; q < outcome.portfolio.runs.size(); ++q) {
        const SolveResult& run = outcome.portfolio.runs[q];
        const EvaluationReport report = evaluate_trajectory(run.trajectory, panel);
        outcome.reports.push_back(report);

        const std::string tag = std::to_string(q);
        write_file(dir / ("report_q" + tag + ".json"), report_to_json(report) + "\n");
        write_file(dir / ("labels_q" + tag + ".csv"),
                   labels_to_csv(make_labels(run.trajectory, panel)));
        write_file(dir / ("stats_q" + tag + ".json"),
                   stats_json_with_prediction(run.stats, config.mode, panel).dump(2) + "\n");

        summary["slices"].push_back({{"q", q},
                                     {"m0", outcome.portfolio.m0_split[q]},
                                     {"final_wealth", run.trajectory.final_wealth},
                                     {"return_pct", report.return_pct},
                                     {"total_trades", report.total_trades},
                                     {"min_gap", report.min_gap}});
        outcome.stdout_text += "q=" + tag + ": r_total=" + fmt_fixed1(report.return_pct) +
                               " trades=" + std::to_string(report.total_trades) +
                               " min_gap=" + std::to_string(report.min_gap) +
                               " final_wealth=" + fmt_double(run.trajectory.final_wealth) + "\n";
    }
    outcome.summary_return_pct = summary_return_pct(outcome.reports);
    summary["summary_return_pct"] = outcome.summary_return_pct;
    write_file(dir / "summary.json", summary.dump(2) + "\n");
    write_file(dir / "panel.csv", panel_to_csv(panel));
    write_file(dir / "plot_series.csv", plot_series_csv(panel, outcome.portfolio));
    outcome.stdout_text += "summary_return=" + fmt_fixed1(outcome.summary_return_pct) + "\n";
    return outcome;
}

BaselineOutcome run_baseline(const RunConfig& config, int asset_id, const std::string& out_dir) {
    const auto dir = prepare_dir(out_dir);
    const CostSchedule costs = costs_of(config);
    const MarketPanel panel = load_panel(config);
    if (panel.universe.n_assets() == 0)
        throw DomainError("baseline: the universe has no assets to buy");
    const int asset = asset_id >= 0 ? asset_id : panel.universe.n_currencies();

    BaselineOutcome outcome;
    outcome.baseline = buy_and_hold(panel, costs, asset, config.m0);
    write_file(dir / "baseline_report.json", report_to_json(outcome.baseline.report) + "\n");
    write_file(dir / "baseline_labels.csv",
               labels_to_csv(make_labels(outcome.baseline.trajectory, panel)));
    outcome.stdout_text =
        "baseline asset=" + std::to_string(asset) +
        ": r_total=" + fmt_fixed1(outcome.baseline.report.return_pct) +
        " final_wealth=" + fmt_double(outcome.baseline.trajectory.final_wealth) + "\n";
    return outcome;
}

SweepOutcome run_sweep(const RunConfig& config, const std::vector<double>& eps_pct,
                       const std::string& out_dir) {
    const auto dir = prepare_dir(out_dir);
    const MarketPanel panel = load_panel(config);
    const AssetUniverse universe = universe_of(config);

    SweepOutcome outcome;
    outcome.csv = "eps_pct,beta,q,return_pct,total_trades,min_gap\n";
    for (double pct : eps_pct) {
        const double eps = pct / 100.0;
        if (!(eps >= 0.0 && eps < 1.0))
            throw DomainError("sweep: eps percent level must be in [0, 100)");
        const double beta = eps == 0.0 ? 0.0 : config.beta;
        const CostSchedule costs = CostSchedule::uniform(universe, eps, beta);

        SolveOptions base;
        base.use_heuristics = config.use_heuristics;
        base.force_terminal_cash = config.force_terminal_cash;
        const PortfolioResult portfolio =
            config.sync ? solve_portfolio_sync(panel, costs, config.mode, config.m0, config.plan, base)
                        : solve_portfolio(panel, costs, config.mode, config.m0, config.plan, base);

        std::vector<EvaluationReport> reports;
        for (std::size_t q = 0; q < portfolio.runs.size(); ++q) {
            reports.push_back(evaluate_trajectory(portfolio.runs[q].trajectory, panel));
            outcome.csv += fmt_double(pct) + "," + fmt_double(beta) + "," + std::to_string(q) +
                           "," + fmt_double(reports.back().return_pct) + "," +
                           std::to_string(reports.back().total_trades) + "," +
                           std::to_string(reports.back().min_gap) + "\n";
        }
        if (portfolio.runs.size() > 1)
            outcome.csv += fmt_double(pct) + "," + fmt_double(beta) + ",summary," +
                           fmt_double(summary_return_pct(reports)) + ",,\n";
    }
    write_file(dir / "sweep.csv", outcome.csv);
    outcome.stdout_text = outcome.csv;
    return outcome;
}

std::string run_stats(const RunConfig& config, const std::string& out_dir) {
    const auto dir = prepare_dir(out_dir);
    const CostSchedule costs = costs_of(config);
    const MarketPanel panel = load_panel(config);
    const PortfolioResult portfolio = solve_configured(config, panel, costs);

    std::string text;
    for (std::size_t q = 0; q < portfolio.runs.size(); ++q) {
        const std::string body =
            stats_json_with_prediction(portfolio.runs[q].stats, config.mode, panel).dump(2) + "\n";
        write_file(dir / ("stats_q" + std::to_string(q) + ".json"), body);
        text += body;
    }
    return text;
}

std::string stats_for_panel(const MarketPanel& panel, const CostSchedule& costs,
                            const ConstraintMode& mode, double m0, bool use_heuristics) {
    SolveOptions options;
    options.use_heuristics = use_heuristics;
    const SolveResult result = solve(panel, costs, mode, m0, options);
    return stats_json_with_prediction(result.stats, mode, panel).dump(2) + "\n";
}

} // namespace hindsight
