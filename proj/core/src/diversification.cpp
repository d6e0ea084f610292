#include "hindsight/diversification.hpp"
#include "hindsight/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace hindsight {

namespace {

std::vector<double> resolve_split(const DiversificationPlan& plan) {
    if (plan.q < 1) throw DomainError("diversification: q must be >= 1");
    if (plan.split.empty())
        return std::vector<double>(plan.q, 1.0 / static_cast<double>(plan.q));
    if (static_cast<int>(plan.split.size()) != plan.q)
        throw DomainError("diversification: split must have q entries");
    double sum = 0.0;
    for (double f : plan.split) {
        if (!(f > 0.0)) throw DomainError("diversification: split fractions must be positive");
        sum += f;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw DomainError("diversification: split fractions must sum to 1");
    return plan.split;
}

std::vector<std::vector<bool>> constrained_masks(const DiversificationPlan& plan, int n_times) {
    std::vector<std::vector<bool>> masks(plan.q, std::vector<bool>(n_times, true));
    if (!plan.constrained_times) return masks;
    if (static_cast<int>(plan.constrained_times->size()) != plan.q)
        throw DomainError("diversification: constrained_times must have one set per slice");
    for (int q = 0; q < plan.q; ++q) {
        masks[q].assign(n_times, false);
        for (int t : (*plan.constrained_times)[q]) {
            if (t < 0 || t >= n_times)
                throw DomainError("diversification: constrained time " + std::to_string(t) +
                                  " outside the calendar");
            masks[q][t] = true;
        }
    }
    return masks;
}

void check_base_options(const SolveOptions& base) {
    if (base.allowed || base.trade_times)
        throw DomainError(
            "diversification: allowed/trade_times are managed per slice; pass a clean base");
}

PortfolioResult run_slices(const MarketPanel& panel, const CostSchedule& costs,
                           const ConstraintMode& mode, double m0, const DiversificationPlan& plan,
                           const SolveOptions& base, bool sync) {
    check_base_options(base);
    const std::vector<double> split = resolve_split(plan);
    const auto masks = constrained_masks(plan, panel.n_times());
    const int n = panel.universe.n_investments();

    PortfolioResult result;
    result.runs.reserve(plan.q);
    result.m0_split.reserve(plan.q);

    std::optional<std::vector<bool>> trade_times;   // set after slice 0 in sync mode
    for (int q = 0; q < plan.q; ++q) {
        SolveOptions options = base;
        if (q > 0) {
            // Exclude ids held by earlier optima at this slice's constrained times.
            std::vector<std::vector<int>> allowed(panel.n_times());
            for (int t = 0; t < panel.n_times(); ++t) {
                std::vector<bool> banned(n, false);
                if (t >= 1 && masks[q][t])
                    for (int r = 0; r < q; ++r)
                        banned[result.runs[r].trajectory.states[t].id] = true;
                for (int id = 0; id < n; ++id)
                    if (!banned[id]) allowed[t].push_back(id);
                if (t >= 1 && allowed[t].empty())
                    throw InfeasibleError("diversification: no admissible id at t=" +
                                          std::to_string(t) + " for slice q=" + std::to_string(q));
            }
            options.allowed = std::move(allowed);
            if (sync) options.trade_times = trade_times;
        }
        try {
            result.runs.push_back(solve(panel, costs, mode, m0 * split[q], options));
        } catch (const InfeasibleError& e) {
            throw InfeasibleError(std::string(e.what()) + " (slice q=" + std::to_string(q) + ")");
        }
        result.m0_split.push_back(m0 * split[q]);
        if (sync && q == 0) {
            std::vector<bool> mask(panel.n_times(), false);
            for (int t : extract_trade_schedule(result.runs[0].trajectory)) mask[t] = true;
            trade_times = std::move(mask);
        }
    }
    return result;
}

} // namespace

std::vector<int> extract_trade_schedule(const Trajectory& trajectory) {
    std::vector<int> out;
    out.reserve(trajectory.trades.size());
    for (const TradeEvent& e : trajectory.trades) out.push_back(e.t);
    return out;
}

PortfolioResult solve_portfolio(const MarketPanel& panel, const CostSchedule& costs,
                                const ConstraintMode& mode, double m0,
                                const DiversificationPlan& plan, const SolveOptions& base) {
    return run_slices(panel, costs, mode, m0, plan, base, /*sync=*/false);
}

PortfolioResult solve_portfolio_sync(const MarketPanel& panel, const CostSchedule& costs,
                                     const ConstraintMode& mode, double m0,
                                     const DiversificationPlan& plan, const SolveOptions& base) {
    return run_slices(panel, costs, mode, m0, plan, base, /*sync=*/true);
}

} // namespace hindsight
