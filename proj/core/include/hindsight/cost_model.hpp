#pragma once

#include <cstdint>
#include <vector>

#include "hindsight/market_data.hpp"

namespace hindsight {

/// Result of the largest-integer-purchase subproblem.
struct BuyResult {
    std::int64_t shares = 0;   // whole shares bought (never negative)
    double residual = 0.0;     // leftover cash in the asset's currency;
                               // negative only when the budget cannot cover beta_buy
};

/// Transaction-cost schedule. Every conversion pays a proportional rate
/// (fraction of notional) plus a fixed fee charged in the *target* currency
/// of the leg (the asset's currency for buy/sell legs). Both matrices have
/// zero diagonals: staying put costs nothing.
class CostSchedule {
public:
    CostSchedule(std::vector<std::vector<double>> eps_fx,   // [n_ccy][n_ccy]
                 std::vector<std::vector<double>> beta_fx,  // [n_ccy][n_ccy]
                 std::vector<double> eps_buy,               // [n_assets]
                 std::vector<double> beta_buy,              // [n_assets]
                 std::vector<double> eps_sell,              // [n_assets]
                 std::vector<double> beta_sell);

    /// Uniform schedule: one proportional rate and one fixed fee applied to
    /// every cross-currency conversion and every asset purchase/sale.
    static CostSchedule uniform(const AssetUniverse& universe, double eps, double beta);

    [[nodiscard]] double eps_fx(int c1, int c2) const { return eps_fx_[c1][c2]; }
    [[nodiscard]] double beta_fx(int c1, int c2) const { return beta_fx_[c1][c2]; }
    [[nodiscard]] double eps_buy(int asset_row) const { return eps_buy_[asset_row]; }
    [[nodiscard]] double beta_buy(int asset_row) const { return beta_buy_[asset_row]; }
    [[nodiscard]] double eps_sell(int asset_row) const { return eps_sell_[asset_row]; }
    [[nodiscard]] double beta_sell(int asset_row) const { return beta_sell_[asset_row]; }

    [[nodiscard]] int n_currencies() const { return static_cast<int>(eps_fx_.size()); }
    [[nodiscard]] int n_assets() const { return static_cast<int>(eps_buy_.size()); }

private:
    std::vector<std::vector<double>> eps_fx_;
    std::vector<std::vector<double>> beta_fx_;
    std::vector<double> eps_buy_, beta_buy_, eps_sell_, beta_sell_;
};

/// Convert a nonnegative cash amount from currency c1 to c2 at the time-t
/// quote: m * x(c1,c2) * (1 - eps_fx) - beta_fx. Identity when c1 == c2.
/// A negative result means the fixed fee exceeded the converted notional;
/// callers must treat it as infeasible.
[[nodiscard]] double fx_convert(double m, int c1, int c2, int t, const MarketPanel& panel,
                                const CostSchedule& costs);

/// Liquidate a position of n shares of `asset_id` plus residual cash m (both
/// in the asset's currency) into currency c2 at time-t quotes:
/// (m + n * p * (1 - eps_sell) - beta_sell) routed through the FX leg.
/// Negative results signal infeasibility and skip the FX leg.
[[nodiscard]] double sell_to_cash(double m, std::int64_t n, int asset_id, int c2, int t,
                                  const MarketPanel& panel, const CostSchedule& costs);

/// Spend `budget` (already in the asset's currency) on the largest whole
/// number of shares at the time-t quote. available = budget - beta_buy,
/// unit = p * (1 + eps_buy), shares = floor(available / unit) clamped to 0,
/// residual = available - shares * unit. The floor is guarded so that
/// residual >= 0 whenever available >= 0.
[[nodiscard]] BuyResult max_integer_buy(double budget, int asset_id, int t,
                                        const MarketPanel& panel, const CostSchedule& costs);

} // namespace hindsight
