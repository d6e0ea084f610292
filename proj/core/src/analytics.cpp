#include "hindsight/analytics.hpp"
#include "hindsight/errors.hpp"

#include <algorithm>
#include <charconv>
#include <string>

#include "json.hpp"

namespace hindsight {

namespace {

std::string fmt_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

} // namespace

EvaluationReport evaluate_trajectory(const Trajectory& trajectory, const MarketPanel& panel) {
    const int horizon = panel.horizon();
    if (static_cast<int>(trajectory.states.size()) != horizon + 1)
        throw DomainError("evaluate_trajectory: trajectory does not match the panel calendar");

    EvaluationReport report;
    const double w0 = trajectory.states.front().wealth;
    report.return_pct = 100.0 * (trajectory.final_wealth - w0) / w0;
    report.total_trades = static_cast<int>(trajectory.trades.size());
    report.min_gap = horizon;
    for (std::size_t i = 1; i < trajectory.trades.size(); ++i)
        report.min_gap =
            std::min(report.min_gap, trajectory.trades[i].t - trajectory.trades[i - 1].t);

    // Round trips: maximal runs of a constant asset id. Gains compare wealth
    // at the step the position is left (or the horizon, for a run still open
    // there) against wealth at the entry decision step, so consecutive runs
    // chain multiplicatively into the total return.
    for (int t = 1; t <= horizon;) {
        const int id = trajectory.states[t].id;
        if (!panel.universe.is_asset(id)) {
            ++t;
            continue;
        }
        const int entry = t;
        while (t <= horizon && trajectory.states[t].id == id) ++t;
        RoundTrip trip;
        trip.asset_id = id;
        trip.entry_t = entry;
        trip.open = t > horizon;
        trip.exit_t = trip.open ? horizon : t;
        trip.duration = trip.open ? horizon - entry + 1 : t - entry;
        const double base = trajectory.states[entry - 1].wealth;
        trip.gain_pct = 100.0 * (trajectory.states[trip.exit_t].wealth - base) / base;
        report.round_trips.push_back(trip);
        if (trip.open) report.open_at_end = true;
    }

    if (!report.round_trips.empty()) {
        RoundTripStats stats;
        stats.gain_pct = {0.0, report.round_trips[0].gain_pct, report.round_trips[0].gain_pct};
        stats.duration = {0.0, static_cast<double>(report.round_trips[0].duration),
                          static_cast<double>(report.round_trips[0].duration)};
        for (const RoundTrip& trip : report.round_trips) {
            stats.gain_pct[0] += trip.gain_pct;
            stats.gain_pct[1] = std::min(stats.gain_pct[1], trip.gain_pct);
            stats.gain_pct[2] = std::max(stats.gain_pct[2], trip.gain_pct);
            const auto d = static_cast<double>(trip.duration);
            stats.duration[0] += d;
            stats.duration[1] = std::min(stats.duration[1], d);
            stats.duration[2] = std::max(stats.duration[2], d);
        }
        const auto n = static_cast<double>(report.round_trips.size());
        stats.gain_pct[0] /= n;
        stats.duration[0] /= n;
        report.stats = stats;
    }
    return report;
}

double summary_return_pct(const std::vector<EvaluationReport>& reports) {
    double sum = 0.0;
    for (const EvaluationReport& r : reports) sum += r.return_pct;
    return sum;
}

BaselineResult buy_and_hold(const MarketPanel& panel, const CostSchedule& costs, int asset_id,
                            double m0) {
    if (!panel.universe.is_asset(asset_id))
        throw DomainError("buy_and_hold: id " + std::to_string(asset_id) + " is not an asset");
    if (panel.horizon() < 1) throw DomainError("buy_and_hold: need at least two observation dates");

    const WaitPolicy wait{1};
    BaselineResult out;
    out.trajectory.states.reserve(panel.n_times());
    out.trajectory.states.push_back(initial_state(m0, wait));
    for (int t = 1; t <= panel.horizon(); ++t) {
        const auto next = transition(out.trajectory.states.back(), asset_id, t, panel, costs, wait);
        if (!next)
            throw InfeasibleError("buy_and_hold: cannot " + std::string(t == 1 ? "enter" : "hold") +
                                  " asset " + std::to_string(asset_id) + " at t=" +
                                  std::to_string(t));
        out.trajectory.states.push_back(*next);
    }
    out.trajectory.trades.push_back(TradeEvent{1, 0, asset_id});
    out.trajectory.final_wealth = out.trajectory.states.back().wealth;
    out.report = evaluate_trajectory(out.trajectory, panel);
    return out;
}

LabelSeries make_labels(const Trajectory& trajectory, const MarketPanel& panel) {
    if (static_cast<int>(trajectory.states.size()) != panel.n_times())
        throw DomainError("make_labels: trajectory does not match the panel calendar");
    LabelSeries labels;
    labels.records.reserve(trajectory.states.size());
    const double w0 = trajectory.states.front().wealth;
    for (std::size_t t = 0; t < trajectory.states.size(); ++t) {
        const State& s = trajectory.states[t];
        LabelRecord rec;
        rec.date = panel.dates[t];
        rec.asset_id = s.id;
        rec.traded = t >= 1 && s.id != trajectory.states[t - 1].id;
        rec.wealth_ref = s.wealth;
        rec.return_pct = 100.0 * (s.wealth - w0) / w0;
        labels.records.push_back(rec);
    }
    return labels;
}

std::string labels_to_csv(const LabelSeries& labels) {
    std::string out = "date,asset_id,action,wealth_ref,return_pct\n";
    for (const LabelRecord& rec : labels.records) {
        out += format_date(rec.date);
        out += ',';
        out += std::to_string(rec.asset_id);
        out += ',';
        out += rec.traded ? "trade" : "hold";
        out += ',';
        out += fmt_double(rec.wealth_ref);
        out += ',';
        out += fmt_double(rec.return_pct);
        out += '\n';
    }
    return out;
}

std::string report_to_json(const EvaluationReport& report) {
    nlohmann::ordered_json j;
    j["e"] = {{"return_pct", report.return_pct},
              {"total_trades", report.total_trades},
              {"min_gap", report.min_gap}};
    if (report.stats) {
        j["E"] = {{"gain_pct", report.stats->gain_pct}, {"duration_steps", report.stats->duration}};
    } else {
        j["E"] = nullptr;
    }
    j["round_trips"] = nlohmann::ordered_json::array();
    for (const RoundTrip& trip : report.round_trips)
        j["round_trips"].push_back({{"asset_id", trip.asset_id},
                                    {"entry_t", trip.entry_t},
                                    {"exit_t", trip.exit_t},
                                    {"gain_pct", trip.gain_pct},
                                    {"duration", trip.duration},
                                    {"open", trip.open}});
    j["open_at_end"] = report.open_at_end;
    return j.dump(2);
}

} // namespace hindsight
