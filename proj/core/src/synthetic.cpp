#include "hindsight/synthetic.hpp"
#include "hindsight/errors.hpp"

#include <cmath>
#include <random>

namespace hindsight {

MarketPanel synthetic_panel(std::uint64_t seed, int n_currencies, int n_assets, int n_times,
                            double asset_vol, double fx_vol, double drift) {
    if (n_times < 2) throw DomainError("synthetic_panel: need at least two observation dates");
    std::vector<int> asset_currency(n_assets);
    for (int a = 0; a < n_assets; ++a) asset_currency[a] = a % n_currencies;
    AssetUniverse universe(n_currencies, n_assets, asset_currency);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> price0(60.0, 140.0);
    std::uniform_real_distribution<double> fx0(0.5, 2.0);
    std::normal_distribution<double> shock(0.0, 1.0);

    MarketPanel panel{universe, {}, {}, {}};
    panel.dates.reserve(n_times);
    const Date start = parse_date("2015-01-01");
    for (int t = 0; t < n_times; ++t) panel.dates.push_back(Date{start.days + t});

    panel.fx_to_ref.assign(n_currencies, std::vector<double>(n_times, 1.0));
    for (int c = 1; c < n_currencies; ++c) {
        panel.fx_to_ref[c][0] = fx0(rng);
        for (int t = 1; t < n_times; ++t)
            panel.fx_to_ref[c][t] = panel.fx_to_ref[c][t - 1] * std::exp(fx_vol * shock(rng));
    }
    panel.prices.assign(n_assets, std::vector<double>(n_times, 0.0));
    for (int a = 0; a < n_assets; ++a) {
        panel.prices[a][0] = price0(rng);
        for (int t = 1; t < n_times; ++t)
            panel.prices[a][t] =
                panel.prices[a][t - 1] * std::exp(drift + asset_vol * shock(rng));
    }
    panel.validate();
    return panel;
}

} // namespace hindsight
