#pragma once

#include <string>
#include <vector>

#include "hindsight/analytics.hpp"
#include "hindsight/diversification.hpp"
#include "hindsight/run_config.hpp"

namespace hindsight {

/// End-to-end pipelines behind the CLI subcommands: ingestion -> alignment ->
/// normalization -> solve -> exports. Every emitted report/label/series file
/// is byte-deterministic for identical inputs; timing lives only in the
/// stats files.

struct OptimizeOutcome {
    PortfolioResult portfolio;
    std::vector<EvaluationReport> reports;   // one per slice
    double summary_return_pct = 0.0;
    std::string stdout_text;
};

/// Solves the configured instance and writes, per slice q: report_q{q}.json,
/// labels_q{q}.csv, stats_q{q}.json; plus summary.json, panel.csv and
/// plot_series.csv under out_dir.
OptimizeOutcome run_optimize(const RunConfig& config, const std::string& out_dir);

struct BaselineOutcome {
    BaselineResult baseline;
    std::string stdout_text;
};

/// Buy-and-hold baseline for one asset (pass -1 for the first asset).
/// Writes baseline_report.json and baseline_labels.csv.
BaselineOutcome run_baseline(const RunConfig& config, int asset_id, const std::string& out_dir);

struct SweepOutcome {
    std::string csv;
    std::string stdout_text;
};

/// Re-solves the instance once per proportional-cost level (percent units),
/// zeroing the fixed fee at the zero level, and writes sweep.csv.
SweepOutcome run_sweep(const RunConfig& config, const std::vector<double>& eps_pct,
                       const std::string& out_dir);

/// Writes stats_q{q}.json (per-layer counts, totals, wall time, and the
/// closed-form predicted totals) and returns the same text for stdout.
std::string run_stats(const RunConfig& config, const std::string& out_dir);

/// Stats for an ad-hoc instance without a config file (used by --synthetic).
std::string stats_for_panel(const MarketPanel& panel, const CostSchedule& costs,
                            const ConstraintMode& mode, double m0, bool use_heuristics);

} // namespace hindsight
