#pragma once

#include <optional>
#include <vector>

#include "hindsight/optimizer.hpp"

namespace hindsight {

/// Sequential multi-trajectory request: wealth is split into `q` slices,
/// solved one after another, each slice forbidden from occupying the ids the
/// earlier slices' optima hold at that slice's constrained times.
struct DiversificationPlan {
    int q = 1;
    /// Wealth fractions per slice (must sum to 1); empty means equal split.
    std::vector<double> split;
    /// Per-slice constrained time sets; absent means every time step is
    /// constrained. Entries < 1 are ignored: every slice starts pinned to the
    /// reference currency, so distinctness cannot bind at t = 0.
    std::optional<std::vector<std::vector<int>>> constrained_times;
};

struct PortfolioResult {
    std::vector<SolveResult> runs;    // one per slice, in solve order
    std::vector<double> m0_split;     // starting cash per slice
};

/// Landing steps of a trajectory's executed trades, ascending.
[[nodiscard]] std::vector<int> extract_trade_schedule(const Trajectory& trajectory);

/// Asynchronous portfolio: slice 0 solves unrestricted; slice q > 0 excludes,
/// at each of its constrained times t >= 1, the ids held at t by slices
/// r < q. Throws InfeasibleError (naming t and q) when an exclusion empties
/// the admissible set. `base` must not carry allowed/trade_times of its own.
[[nodiscard]] PortfolioResult solve_portfolio(const MarketPanel& panel, const CostSchedule& costs,
                                              const ConstraintMode& mode, double m0,
                                              const DiversificationPlan& plan,
                                              const SolveOptions& base = {});

/// Synchronized portfolio: identical to solve_portfolio for slice 0, but
/// slices q > 0 may trade only at the steps where slice 0's optimum traded
/// (holds are forced elsewhere), with the same id exclusions on top.
[[nodiscard]] PortfolioResult solve_portfolio_sync(const MarketPanel& panel,
                                                   const CostSchedule& costs,
                                                   const ConstraintMode& mode, double m0,
                                                   const DiversificationPlan& plan,
                                                   const SolveOptions& base = {});

} // namespace hindsight
