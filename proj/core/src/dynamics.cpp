#include "hindsight/dynamics.hpp"
#include "hindsight/errors.hpp"

#include <algorithm>

namespace hindsight {

double position_value(double m, std::int64_t n, int id, int t, const MarketPanel& panel) {
    const int c = panel.universe.settlement_currency(id);
    const double local = panel.universe.is_asset(id)
                             ? m + static_cast<double>(n) * panel.price(id, t)
                             : m;
    return local * panel.cross_rate(c, 0, t);
}

double revalue(const State& s, int t, const MarketPanel& panel) {
    return position_value(s.cash, s.shares, s.id, t, panel);
}

State initial_state(double m0, const WaitPolicy& wait) {
    if (!(m0 > 0.0)) throw DomainError("initial_state: starting cash must be positive");
    State s;
    s.cash = m0;
    s.wealth = m0;
    s.wait = wait.ready();
    return s;
}

std::optional<State> transition(const State& s, int target, int t, const MarketPanel& panel,
                                const CostSchedule& costs, const WaitPolicy& wait) {
    State next;
    next.parent_id = s.id;

    if (target == s.id) {   // hold: holdings unchanged, re-marked at time-t quotes
        next.id = s.id;
        next.trades = s.trades;
        next.cash = s.cash;
        next.shares = s.shares;
        next.currency = s.currency;
        next.wait = std::min(s.wait + 1, wait.ready());
        next.wealth = revalue(next, t, panel);
        if (!(next.wealth > 0.0)) return std::nullopt;
        return next;
    }

    if (s.wait != wait.ready()) return std::nullopt;   // gap rule: not ready to trade

    // Trades execute at time-(t-1) quotes and are valued at time-t quotes.
    const int exec = t - 1;
    next.id = target;
    next.trades = s.trades + 1;
    next.wait = 0;
    next.currency = panel.universe.settlement_currency(target);

    double cash_in_target;   // proceeds landed in the target's currency
    if (panel.universe.is_asset(s.id))
        cash_in_target = sell_to_cash(s.cash, s.shares, s.id, next.currency, exec, panel, costs);
    else
        cash_in_target = fx_convert(s.cash, s.currency, next.currency, exec, panel, costs);
    if (cash_in_target < 0.0) return std::nullopt;

    if (panel.universe.is_asset(target)) {
        const BuyResult buy = max_integer_buy(cash_in_target, target, exec, panel, costs);
        if (buy.shares < 1 || buy.residual < 0.0) return std::nullopt;
        next.cash = buy.residual;
        next.shares = buy.shares;
    } else {
        next.cash = cash_in_target;
        next.shares = 0;
    }
    next.wealth = revalue(next, t, panel);
    if (!(next.wealth > 0.0)) return std::nullopt;
    return next;
}

std::vector<State> successors(const State& s, int t, const MarketPanel& panel,
                              const CostSchedule& costs, const WaitPolicy& wait,
                              const std::vector<int>& targets) {
    std::vector<State> out;
    out.reserve(targets.size());
    for (int target : targets)
        if (auto next = transition(s, target, t, panel, costs, wait)) out.push_back(*next);
    return out;
}

} // namespace hindsight
