#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hindsight/cost_model.hpp"
#include "hindsight/market_data.hpp"

namespace hindsight {

/// Minimum-gap rule between executed trades. A position may trade again only
/// once `gap` periods have elapsed since its last trade; the wait counter
/// saturates at gap-1, so gap = 1 means trading is always admissible.
struct WaitPolicy {
    int gap = 1;

    [[nodiscard]] int ready() const { return gap - 1; }   // counter value that unlocks trading
};

/// Full portfolio state at one time step. Cash is held in exactly one
/// currency at a time; asset positions are whole shares plus a cash residual
/// in the asset's denomination currency.
struct State {
    int id = 0;                // current investment id
    int trades = 0;            // executed trades so far
    int parent_id = 0;         // investment id held at the previous step
    double cash = 0.0;         // cash in `currency` (residual when holding an asset)
    std::int64_t shares = 0;   // whole shares held (0 for pure currency positions)
    double wealth = 0.0;       // mark-to-market value in the reference currency
    int wait = 0;              // periods since last trade, saturated at gap-1
    int currency = 0;          // currency of `cash`
};

/// Mark-to-market value of holdings (cash m, shares n of investment id) at
/// time-t quotes, in the reference currency.
[[nodiscard]] double position_value(double m, std::int64_t n, int id, int t,
                                    const MarketPanel& panel);

/// Re-derive a state's wealth field from its holdings at time t.
[[nodiscard]] double revalue(const State& s, int t, const MarketPanel& panel);

/// All wealth starts as reference-currency cash, ready to trade immediately.
/// Throws DomainError unless m0 > 0.
[[nodiscard]] State initial_state(double m0, const WaitPolicy& wait = WaitPolicy{1});

/// Advance `s` from time t-1 to time t into investment `target`.
///
/// target == s.id holds the position: holdings unchanged, the wait counter
/// advances (saturating), wealth is re-marked at time-t quotes. Any other
/// target executes an all-or-nothing trade at time-(t-1) quotes, valued at
/// time-t quotes. Returns nullopt when inadmissible (wait counter not ready)
/// or infeasible (negative cash after fees, or an asset entry below one
/// whole share, or wealth not positive).
[[nodiscard]] std::optional<State> transition(const State& s, int target, int t,
                                              const MarketPanel& panel, const CostSchedule& costs,
                                              const WaitPolicy& wait);

/// All admissible successors of `s` at time t, one per feasible target id,
/// in ascending target order. Hold is produced only if s.id is in `targets`.
[[nodiscard]] std::vector<State> successors(const State& s, int t, const MarketPanel& panel,
                                            const CostSchedule& costs, const WaitPolicy& wait,
                                            const std::vector<int>& targets);

} // namespace hindsight
