#include "hindsight/cost_model.hpp"
#include "hindsight/errors.hpp"

#include <cmath>
#include <string>

namespace hindsight {

namespace {

void check_rates(const std::vector<double>& eps, const std::vector<double>& beta,
                 const char* what) {
    for (double e : eps)
        if (!(e >= 0.0 && e < 1.0))
            throw DomainError(std::string("costs: ") + what + " rate must be in [0,1)");
    for (double b : beta)
        if (!(b >= 0.0) || !std::isfinite(b))
            throw DomainError(std::string("costs: ") + what + " fee must be >= 0");
}

} // namespace

CostSchedule::CostSchedule(std::vector<std::vector<double>> eps_fx,
                           std::vector<std::vector<double>> beta_fx, std::vector<double> eps_buy,
                           std::vector<double> beta_buy, std::vector<double> eps_sell,
                           std::vector<double> beta_sell)
    : eps_fx_(std::move(eps_fx)),
      beta_fx_(std::move(beta_fx)),
      eps_buy_(std::move(eps_buy)),
      beta_buy_(std::move(beta_buy)),
      eps_sell_(std::move(eps_sell)),
      beta_sell_(std::move(beta_sell)) {
    const std::size_t nc = eps_fx_.size();
    if (beta_fx_.size() != nc) throw DomainError("costs: eps_fx/beta_fx shape mismatch");
    for (std::size_t i = 0; i < nc; ++i) {
        if (eps_fx_[i].size() != nc || beta_fx_[i].size() != nc)
            throw DomainError("costs: FX matrices must be square");
        if (eps_fx_[i][i] != 0.0 || beta_fx_[i][i] != 0.0)
            throw DomainError("costs: FX matrix diagonals must be zero");
        check_rates(eps_fx_[i], beta_fx_[i], "fx");
    }
    if (eps_buy_.size() != beta_buy_.size() || eps_sell_.size() != beta_sell_.size() ||
        eps_buy_.size() != eps_sell_.size())
        throw DomainError("costs: per-asset vectors must have equal length");
    check_rates(eps_buy_, beta_buy_, "buy");
    check_rates(eps_sell_, beta_sell_, "sell");
}

CostSchedule CostSchedule::uniform(const AssetUniverse& universe, double eps, double beta) {
    const int nc = universe.n_currencies();
    const int na = universe.n_assets();
    std::vector<std::vector<double>> efx(nc, std::vector<double>(nc, eps));
    std::vector<std::vector<double>> bfx(nc, std::vector<double>(nc, beta));
    for (int c = 0; c < nc; ++c) efx[c][c] = bfx[c][c] = 0.0;
    return CostSchedule(std::move(efx), std::move(bfx), std::vector<double>(na, eps),
                        std::vector<double>(na, beta), std::vector<double>(na, eps),
                        std::vector<double>(na, beta));
}

double fx_convert(double m, int c1, int c2, int t, const MarketPanel& panel,
                  const CostSchedule& costs) {
    if (c1 == c2) return m;
    return m * panel.cross_rate(c1, c2, t) * (1.0 - costs.eps_fx(c1, c2)) - costs.beta_fx(c1, c2);
}

double sell_to_cash(double m, std::int64_t n, int asset_id, int c2, int t,
                    const MarketPanel& panel, const CostSchedule& costs) {
    const int row = asset_id - panel.universe.n_currencies();
    const int c1 = panel.universe.settlement_currency(asset_id);
    const double proceeds = m +
                            static_cast<double>(n) * panel.price(asset_id, t) *
                                (1.0 - costs.eps_sell(row)) -
                            costs.beta_sell(row);
    if (proceeds < 0.0) return proceeds;   // already infeasible; skip the FX leg
    return fx_convert(proceeds, c1, c2, t, panel, costs);
}

BuyResult max_integer_buy(double budget, int asset_id, int t, const MarketPanel& panel,
                          const CostSchedule& costs) {
    const int row = asset_id - panel.universe.n_currencies();
    const double available = budget - costs.beta_buy(row);
    const double unit = panel.price(asset_id, t) * (1.0 + costs.eps_buy(row));
    std::int64_t n = 0;
    if (available >= unit) {
        n = static_cast<std::int64_t>(std::floor(available / unit));
        // The division may round up across an integer boundary; never overspend.
        while (n > 0 && static_cast<double>(n) * unit > available) --n;
    }
    return BuyResult{n, available - static_cast<double>(n) * unit};
}

} // namespace hindsight
