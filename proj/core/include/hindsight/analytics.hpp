#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hindsight/optimizer.hpp"

namespace hindsight {

/// One completed (or synthetically closed) asset holding period.
struct RoundTrip {
    int asset_id = 0;
    int entry_t = 0;        // first step holding the asset
    int exit_t = 0;         // step the liquidation lands (horizon when still open)
    double gain_pct = 0.0;  // wealth at exit vs wealth at the entry decision step (entry_t - 1)
    int duration = 0;       // number of steps the asset was held
    bool open = false;      // closed synthetically at the horizon
};

/// avg/min/max over round-trip gains and durations; absent without trips.
struct RoundTripStats {
    std::array<double, 3> gain_pct{};   // avg, min, max
    std::array<double, 3> duration{};   // avg, min, max
};

struct EvaluationReport {
    double return_pct = 0.0;   // 100 * (terminal wealth - starting wealth) / starting wealth
    int total_trades = 0;
    int min_gap = 0;           // min steps between consecutive trades; horizon when trades <= 1
    std::vector<RoundTrip> round_trips;
    std::optional<RoundTripStats> stats;
    bool open_at_end = false;
};

/// Per-step supervised-learning labels along an optimal trajectory.
struct LabelRecord {
    Date date;
    int asset_id = 0;
    bool traded = false;       // this step landed a trade
    double wealth_ref = 0.0;
    double return_pct = 0.0;   // vs starting wealth
};

struct LabelSeries {
    std::vector<LabelRecord> records;
};

[[nodiscard]] EvaluationReport evaluate_trajectory(const Trajectory& trajectory,
                                                   const MarketPanel& panel);

/// Aggregate headline return of a multi-slice portfolio: the sum of the
/// slices' individual percentage returns.
[[nodiscard]] double summary_return_pct(const std::vector<EvaluationReport>& reports);

struct BaselineResult {
    Trajectory trajectory;
    EvaluationReport report;
};

/// Buy `asset_id` with all starting cash on the first step and hold it to the
/// horizon, through the same transition arithmetic as the optimizer. Throws
/// InfeasibleError when the entry cannot buy a single share.
[[nodiscard]] BaselineResult buy_and_hold(const MarketPanel& panel, const CostSchedule& costs,
                                          int asset_id, double m0);

[[nodiscard]] LabelSeries make_labels(const Trajectory& trajectory, const MarketPanel& panel);

/// `date,asset_id,action,wealth_ref,return_pct` with shortest round-trip
/// number formatting; byte-stable for identical inputs.
[[nodiscard]] std::string labels_to_csv(const LabelSeries& labels);

[[nodiscard]] std::string report_to_json(const EvaluationReport& report);

} // namespace hindsight
