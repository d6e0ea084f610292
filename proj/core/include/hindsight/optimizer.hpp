#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hindsight/dynamics.hpp"

namespace hindsight {

/// Trade-frequency regime for a solve.
class ConstraintMode {
public:
    enum class Kind { Unconstrained, MaxTrades, MinWait };

    static ConstraintMode unconstrained() { return {Kind::Unconstrained, 1}; }
    static ConstraintMode max_trades(int k);   // at most k executed trades
    static ConstraintMode min_wait(int d);     // at least d periods between trades

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] int limit() const { return limit_; }   // k or d; 1 when unconstrained

    /// Gap rule induced by the mode (d for MinWait, else 1).
    [[nodiscard]] WaitPolicy wait_policy() const {
        return WaitPolicy{kind_ == Kind::MinWait ? limit_ : 1};
    }
    /// Number of per-id signature values states are keyed by.
    [[nodiscard]] int aux_span() const;
    /// Signature value of a state under this mode (trade count / wait counter).
    [[nodiscard]] int aux_of(const State& s) const;
    /// Whether a state may still open a trade (trade budget not exhausted).
    [[nodiscard]] bool may_trade(const State& s) const {
        return kind_ != Kind::MaxTrades || s.trades < limit_;
    }

    [[nodiscard]] std::string describe() const;

private:
    ConstraintMode(Kind kind, int limit) : kind_(kind), limit_(limit) {}
    Kind kind_;
    int limit_;
};

/// One retained node of the trajectory graph.
struct LayerEntry {
    State state;
    int parent_slot = -1;   // slot index in the previous layer; -1 at the root
};

/// All states retained at one time step, keyed densely by
/// slot = id * aux_span + signature. At most one state per slot survives
/// (the wealth-maximal one).
struct Layer {
    int t = 0;
    int aux_span = 1;
    std::vector<std::optional<LayerEntry>> slots;

    [[nodiscard]] int slot_of(int id, int aux) const { return id * aux_span + aux; }
    [[nodiscard]] std::int64_t count() const;
};

struct TradeEvent {
    int t = 0;      // the landing step of the trade (executed at t-1 quotes)
    int from = 0;
    int to = 0;
};

/// A reconstructed optimal path through the graph.
struct Trajectory {
    std::vector<State> states;        // one per time step, t = 0..horizon
    std::vector<TradeEvent> trades;   // exactly the steps where the id changes
    double final_wealth = 0.0;

    [[nodiscard]] std::vector<int> ids() const;
};

/// Shape and timing of a finished solve.
struct SolveStats {
    std::string mode;
    bool heuristics = false;
    std::vector<std::int64_t> layer_counts;   // retained states per time step
    std::int64_t total_states = 0;
    double wall_seconds = 0.0;
};

[[nodiscard]] std::string stats_to_json(const SolveStats& stats);

struct SolveResult {
    Trajectory trajectory;
    SolveStats stats;
};

struct SolveOptions {
    bool use_heuristics = true;
    /// Optional per-time admissible id sets (size horizon+1, entry t ignored
    /// for t = 0); absent means every id is admissible everywhere.
    std::optional<std::vector<std::vector<int>>> allowed;
    /// Optional trade window: when present, trades may land only at steps t with
    /// trade_times[t] true; every other step is forced to hold.
    std::optional<std::vector<bool>> trade_times;
    /// Liquidate a terminal asset position into reference-currency cash at
    /// final-step quotes (appends one extra trade event).
    bool force_terminal_cash = false;
};

/// Grow the graph one step: every retained state in `prev` is advanced to
/// every admissible target in `allowed` (ascending), keeping per slot only
/// the wealth-maximal candidate. Ties prefer holds over trades, then the
/// smaller parent id, then the smaller parent signature. Trade edges are
/// suppressed for states whose trade budget is exhausted, and entirely when
/// trades_admissible is false. Throws InfeasibleError when nothing survives.
[[nodiscard]] Layer expand_layer(const Layer& prev, int t, const MarketPanel& panel,
                                 const CostSchedule& costs, const ConstraintMode& mode,
                                 const std::vector<int>& allowed, bool trades_admissible = true);

/// Trade-budget dominance filter: per id, drop every state that has spent
/// more trades than the id's wealth-maximal state (ties resolved toward the
/// smallest spent count). Never compares across ids.
[[nodiscard]] Layer prune_trade_budget(const Layer& layer);

/// Wait-counter dominance filter: per id, drop states with 0 < wait < w*,
/// where w* is the wait counter of the id's wealth-maximal state (ties
/// resolved toward the largest counter). States at wait = 0 are kept.
[[nodiscard]] Layer prune_wait_counter(const Layer& layer);

/// Exact hindsight optimum: expands the full layered graph forward, then
/// reconstructs the wealth-maximal trajectory backwards.
[[nodiscard]] SolveResult solve(const MarketPanel& panel, const CostSchedule& costs,
                                const ConstraintMode& mode, double m0,
                                const SolveOptions& options = {});

struct OracleResult {
    Trajectory trajectory;
    std::int64_t sequences_evaluated = 0;   // complete feasible id sequences simulated
};

/// Reference solver: exhaustively enumerates every id sequence (depth-first,
/// ascending ids, so ties keep the lexicographically smallest sequence) and
/// simulates each through the exact same transition arithmetic as solve().
/// Refuses instances with more than `guard` candidate sequences.
[[nodiscard]] OracleResult brute_force_oracle(
    const MarketPanel& panel, const CostSchedule& costs, const ConstraintMode& mode, double m0,
    const std::optional<std::vector<std::vector<int>>>& allowed = std::nullopt,
    std::int64_t guard = 10'000'000);

/// Closed-form size of the unpruned graph (total retained states over layers
/// 0..t) when every transition is feasible and at least three ids exist.
[[nodiscard]] std::int64_t predicted_state_count(const ConstraintMode& mode, int n_investments,
                                                 int t);

} // namespace hindsight
