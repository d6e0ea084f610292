#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hindsight/cost_model.hpp"
#include "hindsight/diversification.hpp"
#include "hindsight/market_data.hpp"
#include "hindsight/optimizer.hpp"

namespace hindsight {

/// One quote file to ingest. kind is "fx" (currency-per-reference-unit) or
/// "asset"; the id must match the universe's id ranges.
struct DataEntry {
    int id = 0;
    std::string kind;
    std::string path;   // resolved against the config file's directory on load
};

/// Optional full cost tables; any present table overrides the uniform
/// schedule built from the scalar eps/beta.
struct CostTables {
    std::optional<std::vector<std::vector<double>>> eps_fx, beta_fx;
    std::optional<std::vector<double>> eps_buy, beta_buy, eps_sell, beta_sell;
};

struct RunConfig {
    double m0 = 0.0;
    int n_currencies = 1;
    int n_assets = 0;
    std::vector<int> asset_currency;
    std::unordered_map<int, std::string> names;
    std::vector<DataEntry> data;
    double eps = 0.0;
    double beta = 0.0;
    CostTables tables;
    ConstraintMode mode = ConstraintMode::unconstrained();
    DiversificationPlan plan;
    bool sync = false;
    bool use_heuristics = true;
    bool force_terminal_cash = false;
    std::string output_dir = "out";
};

/// Parse and validate a JSON run configuration. Data paths are resolved
/// relative to the config file and must exist. Throws DomainError on any
/// validation failure (including unreadable/malformed JSON) so the CLI can
/// map configuration problems to a single exit code.
[[nodiscard]] RunConfig load_run_config(const std::string& path);

[[nodiscard]] AssetUniverse universe_of(const RunConfig& config);
[[nodiscard]] CostSchedule costs_of(const RunConfig& config);

/// Ingest every configured series, align calendars, and rebase asset prices.
[[nodiscard]] MarketPanel load_panel(const RunConfig& config);

} // namespace hindsight
