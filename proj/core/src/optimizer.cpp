#include "hindsight/optimizer.hpp"
#include "hindsight/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "json.hpp"

namespace hindsight {

ConstraintMode ConstraintMode::max_trades(int k) {
    if (k < 1) throw DomainError("max_trades: k must be >= 1");
    return {Kind::MaxTrades, k};
}

ConstraintMode ConstraintMode::min_wait(int d) {
    if (d < 1) throw DomainError("min_wait: d must be >= 1");
    return {Kind::MinWait, d};
}

int ConstraintMode::aux_span() const {
    switch (kind_) {
        case Kind::Unconstrained: return 1;
        case Kind::MaxTrades: return limit_ + 1;
        case Kind::MinWait: return limit_;
    }
    return 1;
}

int ConstraintMode::aux_of(const State& s) const {
    switch (kind_) {
        case Kind::Unconstrained: return 0;
        case Kind::MaxTrades: return s.trades;
        case Kind::MinWait: return s.wait;
    }
    return 0;
}

std::string ConstraintMode::describe() const {
    switch (kind_) {
        case Kind::Unconstrained: return "unconstrained";
        case Kind::MaxTrades: return "max_trades(" + std::to_string(limit_) + ")";
        case Kind::MinWait: return "min_wait(" + std::to_string(limit_) + ")";
    }
    return "?";
}

std::int64_t Layer::count() const {
    return std::count_if(slots.begin(), slots.end(), [](const auto& s) { return s.has_value(); });
}

std::vector<int> Trajectory::ids() const {
    std::vector<int> out;
    out.reserve(states.size());
    for (const State& s : states) out.push_back(s.id);
    return out;
}

namespace {

bool is_hold(const State& s) { return s.parent_id == s.id; }

/// Deterministic per-slot reduction: wealth first, then holds over trades,
/// then the smaller parent id, then the smaller parent slot.
bool replaces(const LayerEntry& cand, const LayerEntry& inc) {
    if (cand.state.wealth != inc.state.wealth) return cand.state.wealth > inc.state.wealth;
    if (is_hold(cand.state) != is_hold(inc.state)) return is_hold(cand.state);
    if (cand.state.parent_id != inc.state.parent_id)
        return cand.state.parent_id < inc.state.parent_id;
    return cand.parent_slot < inc.parent_slot;
}

void place(std::optional<LayerEntry>& cell, const LayerEntry& cand) {
    if (!cell || replaces(cand, *cell)) cell = cand;
}

std::vector<int> all_ids(int n) {
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    return ids;
}

} // namespace

Layer expand_layer(const Layer& prev, int t, const MarketPanel& panel, const CostSchedule& costs,
                   const ConstraintMode& mode, const std::vector<int>& allowed,
                   bool trades_admissible) {
    const WaitPolicy wait = mode.wait_policy();
    Layer next;
    next.t = t;
    next.aux_span = prev.aux_span;
    next.slots.assign(static_cast<std::size_t>(panel.universe.n_investments()) * next.aux_span,
                      std::nullopt);

    for (int ps = 0; ps < static_cast<int>(prev.slots.size()); ++ps) {
        if (!prev.slots[ps]) continue;
        const State& s = prev.slots[ps]->state;
        const bool can_trade = trades_admissible && mode.may_trade(s) && s.wait == wait.ready();
        for (int target : allowed) {
            if (target != s.id && !can_trade) continue;
            const auto ns = transition(s, target, t, panel, costs, wait);
            if (!ns) continue;
            place(next.slots[next.slot_of(target, mode.aux_of(*ns))], LayerEntry{*ns, ps});
        }
    }
    if (next.count() == 0)
        throw InfeasibleError("no admissible state at t=" + std::to_string(t));
    return next;
}

Layer prune_trade_budget(const Layer& layer) {
    Layer out = layer;
    const int span = out.aux_span;
    const int n_ids = static_cast<int>(out.slots.size()) / span;
    for (int id = 0; id < n_ids; ++id) {
        double best_w = 0.0;
        int best_aux = -1;
        for (int aux = 0; aux < span; ++aux) {   // ascending: ties keep the fewest trades
            const auto& cell = out.slots[out.slot_of(id, aux)];
            if (cell && (best_aux < 0 || cell->state.wealth > best_w)) {
                best_w = cell->state.wealth;
                best_aux = aux;
            }
        }
        if (best_aux < 0) continue;
        for (int aux = best_aux + 1; aux < span; ++aux)
            out.slots[out.slot_of(id, aux)].reset();
    }
    return out;
}

Layer prune_wait_counter(const Layer& layer) {
    Layer out = layer;
    const int span = out.aux_span;
    const int n_ids = static_cast<int>(out.slots.size()) / span;
    for (int id = 0; id < n_ids; ++id) {
        double best_w = 0.0;
        int best_aux = -1;
        for (int aux = 0; aux < span; ++aux) {   // >= : ties keep the largest counter
            const auto& cell = out.slots[out.slot_of(id, aux)];
            if (cell && (best_aux < 0 || cell->state.wealth >= best_w)) {
                best_w = cell->state.wealth;
                best_aux = aux;
            }
        }
        for (int aux = 1; aux < best_aux; ++aux)   // wait = 0 is always kept
            out.slots[out.slot_of(id, aux)].reset();
    }
    return out;
}

namespace {

Layer root_layer(const MarketPanel& panel, const ConstraintMode& mode, double m0) {
    Layer root;
    root.t = 0;
    root.aux_span = mode.aux_span();
    root.slots.assign(static_cast<std::size_t>(panel.universe.n_investments()) * root.aux_span,
                      std::nullopt);
    const State z0 = initial_state(m0, mode.wait_policy());
    root.slots[root.slot_of(z0.id, mode.aux_of(z0))] = LayerEntry{z0, -1};
    return root;
}

Trajectory reconstruct(const std::vector<Layer>& layers) {
    const Layer& last = layers.back();
    int best_slot = -1;
    for (int slot = 0; slot < static_cast<int>(last.slots.size()); ++slot) {
        if (!last.slots[slot]) continue;
        if (best_slot < 0 || last.slots[slot]->state.wealth > last.slots[best_slot]->state.wealth)
            best_slot = slot;
    }

    Trajectory traj;
    traj.states.resize(layers.size());
    int slot = best_slot;
    for (int t = static_cast<int>(layers.size()) - 1; t >= 0; --t) {
        const LayerEntry& entry = *layers[t].slots[slot];
        traj.states[t] = entry.state;
        slot = entry.parent_slot;
    }
    for (std::size_t t = 1; t < traj.states.size(); ++t)
        if (traj.states[t].id != traj.states[t - 1].id)
            traj.trades.push_back(
                TradeEvent{static_cast<int>(t), traj.states[t - 1].id, traj.states[t].id});
    traj.final_wealth = traj.states.back().wealth;
    return traj;
}

void liquidate_terminal(Trajectory& traj, const MarketPanel& panel, const CostSchedule& costs) {
    State& last = traj.states.back();
    if (!panel.universe.is_asset(last.id)) return;
    const int t = panel.horizon();
    const double proceeds = sell_to_cash(last.cash, last.shares, last.id, 0, t, panel, costs);
    if (!(proceeds > 0.0))
        throw InfeasibleError("terminal liquidation at t=" + std::to_string(t) +
                              " yields no positive cash");
    traj.trades.push_back(TradeEvent{t, last.id, 0});
    last.parent_id = traj.states[traj.states.size() - 2].id;
    last.id = 0;
    last.currency = 0;
    last.trades += 1;
    last.wait = 0;
    last.cash = proceeds;
    last.shares = 0;
    last.wealth = proceeds;
    traj.final_wealth = proceeds;
}

void validate_options(const SolveOptions& options, const MarketPanel& panel) {
    const int n_times = panel.n_times();
    const int n = panel.universe.n_investments();
    if (options.allowed) {
        if (static_cast<int>(options.allowed->size()) != n_times)
            throw DomainError("solve: allowed-id sets must cover every time step");
        for (const auto& ids : *options.allowed)
            for (int id : ids)
                if (id < 0 || id >= n)
                    throw DomainError("solve: allowed set names unknown id " + std::to_string(id));
    }
    if (options.trade_times && static_cast<int>(options.trade_times->size()) != n_times)
        throw DomainError("solve: trade-time mask must cover every time step");
}

} // namespace

SolveResult solve(const MarketPanel& panel, const CostSchedule& costs, const ConstraintMode& mode,
                  double m0, const SolveOptions& options) {
    if (panel.horizon() < 1) throw DomainError("solve: need at least two observation dates");
    validate_options(options, panel);
    const auto t_start = std::chrono::steady_clock::now();
    const std::vector<int> everything = all_ids(panel.universe.n_investments());

    std::vector<Layer> layers;
    layers.reserve(panel.n_times());
    layers.push_back(root_layer(panel, mode, m0));
    for (int t = 1; t <= panel.horizon(); ++t) {
        const std::vector<int>& allowed = options.allowed ? (*options.allowed)[t] : everything;
        const bool trades_ok = !options.trade_times || (*options.trade_times)[t];
        Layer next = expand_layer(layers.back(), t, panel, costs, mode, allowed, trades_ok);
        if (options.use_heuristics) {
            if (mode.kind() == ConstraintMode::Kind::MaxTrades) next = prune_trade_budget(next);
            if (mode.kind() == ConstraintMode::Kind::MinWait) next = prune_wait_counter(next);
        }
        layers.push_back(std::move(next));
    }

    SolveResult result;
    result.trajectory = reconstruct(layers);
    if (options.force_terminal_cash) liquidate_terminal(result.trajectory, panel, costs);

    result.stats.mode = mode.describe();
    result.stats.heuristics = options.use_heuristics;
    result.stats.layer_counts.reserve(layers.size());
    for (const Layer& layer : layers) result.stats.layer_counts.push_back(layer.count());
    result.stats.total_states = std::accumulate(result.stats.layer_counts.begin(),
                                                result.stats.layer_counts.end(), std::int64_t{0});
    result.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return result;
}

std::string stats_to_json(const SolveStats& stats) {
    nlohmann::ordered_json j;
    j["mode"] = stats.mode;
    j["heuristics"] = stats.heuristics;
    j["layer_counts"] = stats.layer_counts;
    j["total_states"] = stats.total_states;
    j["wall_seconds"] = stats.wall_seconds;
    return j.dump(2);
}

OracleResult brute_force_oracle(const MarketPanel& panel, const CostSchedule& costs,
                                const ConstraintMode& mode, double m0,
                                const std::optional<std::vector<std::vector<int>>>& allowed,
                                std::int64_t guard) {
    if (panel.horizon() < 1)
        throw DomainError("brute_force_oracle: need at least two observation dates");
    const int n = panel.universe.n_investments();
    const int horizon = panel.horizon();
    const long double sequences = std::pow(static_cast<long double>(n), horizon);
    if (sequences > static_cast<long double>(guard))
        throw DomainError("brute_force_oracle: " + std::to_string(n) + "^" +
                          std::to_string(horizon) + " ~ " +
                          std::to_string(static_cast<double>(sequences)) +
                          " sequences exceed guard " + std::to_string(guard));
    if (allowed && static_cast<int>(allowed->size()) != panel.n_times())
        throw DomainError("brute_force_oracle: allowed-id sets must cover every time step");

    const WaitPolicy wait = mode.wait_policy();
    const std::vector<int> everything = all_ids(n);
    std::vector<State> path(static_cast<std::size_t>(horizon) + 1);
    path[0] = initial_state(m0, wait);

    OracleResult result;
    bool have_best = false;

    auto record = [&] {
        ++result.sequences_evaluated;
        if (have_best && !(path.back().wealth > result.trajectory.final_wealth)) return;
        have_best = true;
        result.trajectory.states = path;
        result.trajectory.trades.clear();
        for (int t = 1; t <= horizon; ++t)
            if (path[t].id != path[t - 1].id)
                result.trajectory.trades.push_back(TradeEvent{t, path[t - 1].id, path[t].id});
        result.trajectory.final_wealth = path.back().wealth;
    };

    auto visit = [&](auto&& self, int t) -> void {
        if (t > horizon) {
            record();
            return;
        }
        const std::vector<int>& targets = allowed ? (*allowed)[t] : everything;
        for (int target : targets) {
            if (target != path[t - 1].id && !mode.may_trade(path[t - 1])) continue;
            const auto ns = transition(path[t - 1], target, t, panel, costs, wait);
            if (!ns) continue;
            path[t] = *ns;
            self(self, t + 1);
        }
    };
    visit(visit, 1);

    if (!have_best) throw InfeasibleError("brute_force_oracle: no feasible id sequence");
    return result;
}

std::int64_t predicted_state_count(const ConstraintMode& mode, int n_investments, int t) {
    if (n_investments < 1) throw DomainError("predicted_state_count: empty universe");
    if (t < 0) throw DomainError("predicted_state_count: negative time");
    const auto n = static_cast<std::int64_t>(n_investments);
    switch (mode.kind()) {
        case ConstraintMode::Kind::Unconstrained:
            return 1 + n * t;
        case ConstraintMode::Kind::MaxTrades: {
            const std::int64_t k = mode.limit();
            const std::int64_t ramp = t <= k ? t * (t + 1) / 2 : k * (k + 1) / 2 + (t - k) * k;
            return 1 + n * ramp;
        }
        case ConstraintMode::Kind::MinWait: {
            // Per layer l: every non-initial id contributes min(l, d) signature
            // values; the initial id contributes its never-traded state plus
            // re-entries, which first become possible at l = d + 1.
            const std::int64_t d = mode.limit();
            std::int64_t total = 1;
            for (std::int64_t l = 1; l <= t; ++l)
                total += (n - 1) * std::min(l, d) + 1 + std::min(std::max<std::int64_t>(0, l - d), d - 1);
            return total;
        }
    }
    throw DomainError("predicted_state_count: unknown mode");
}

} // namespace hindsight
