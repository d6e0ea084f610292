#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hindsight/market_data.hpp"

namespace fixtures {

/// Build an aligned panel directly. `fx_rows` carries one row per
/// non-reference currency (the reference row of ones is added here);
/// dates are consecutive days from 2020-01-02.
inline hindsight::MarketPanel make_panel(int n_currencies, std::vector<int> asset_currency,
                                         std::vector<std::vector<double>> fx_rows,
                                         std::vector<std::vector<double>> price_rows) {
    const int n_times = static_cast<int>(
        !price_rows.empty() ? price_rows.front().size()
                            : (!fx_rows.empty() ? fx_rows.front().size() : 0));
    const int n_assets = static_cast<int>(asset_currency.size());
    hindsight::AssetUniverse universe(n_currencies, n_assets, std::move(asset_currency));
    std::vector<hindsight::Date> dates;
    const hindsight::Date start = hindsight::parse_date("2020-01-02");
    for (int t = 0; t < n_times; ++t) dates.push_back(hindsight::Date{start.days + t});

    std::vector<std::vector<double>> fx;
    fx.emplace_back(n_times, 1.0);
    for (auto& row : fx_rows) fx.push_back(std::move(row));

    hindsight::MarketPanel panel{std::move(universe), std::move(dates), std::move(fx),
                                 std::move(price_rows)};
    panel.validate();
    return panel;
}

/// Golden 4-step instance: one currency, one asset priced [100,110,105,115].
/// With zero costs and m0 = 1000 the optimal final wealth is 1200
/// (ids 0,1,0,1), MaxTrades K=2 gives 1150, MinWait D=2 gives 1150.
inline hindsight::MarketPanel w1_panel() {
    return make_panel(1, {0}, {}, {{100.0, 110.0, 105.0, 115.0}});
}

/// Three-id companion instance: one currency, two assets, four steps.
inline hindsight::MarketPanel w2_panel() {
    return make_panel(1, {0, 0}, {}, {{100.0, 110.0, 105.0, 115.0}, {100.0, 95.0, 112.0, 108.0}});
}

} // namespace fixtures
