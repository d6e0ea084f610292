#pragma once

#include <cstdint>

#include "hindsight/market_data.hpp"

namespace hindsight {

/// Deterministic geometric-random-walk fixture panel for tests, benchmarks
/// and the CLI's --seed path. Assets are assigned round-robin to currencies;
/// asset prices start in [60, 140], FX rates in [0.5, 2.0].
[[nodiscard]] MarketPanel synthetic_panel(std::uint64_t seed, int n_currencies, int n_assets,
                                          int n_times, double asset_vol = 0.02,
                                          double fx_vol = 0.008, double drift = 0.0005);

} // namespace hindsight
