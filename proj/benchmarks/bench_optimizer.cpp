#include <benchmark/benchmark.h>

#include "hindsight/optimizer.hpp"
#include "hindsight/synthetic.hpp"

namespace {

using namespace hindsight;

// The headline workload: a 31-id universe over 199 trading days.
const MarketPanel& large_panel() {
    static const MarketPanel panel = synthetic_panel(7, 15, 16, 200);
    return panel;
}

const MarketPanel& small_panel() {
    static const MarketPanel panel = synthetic_panel(11, 2, 3, 60);
    return panel;
}

void bench_solve_unconstrained(benchmark::State& state) {
    const auto& panel = large_panel();
    const auto costs = CostSchedule::uniform(panel.universe, 0.005, 1.0);
    for (auto _ : state) {
        auto result = solve(panel, costs, ConstraintMode::unconstrained(), 1e6);
        benchmark::DoNotOptimize(result.trajectory.final_wealth);
    }
}
BENCHMARK(bench_solve_unconstrained)->Unit(benchmark::kMillisecond);

void bench_solve_max_trades(benchmark::State& state) {
    const auto& panel = large_panel();
    const auto costs = CostSchedule::uniform(panel.universe, 0.005, 1.0);
    for (auto _ : state) {
        auto result = solve(panel, costs, ConstraintMode::max_trades(12), 1e6);
        benchmark::DoNotOptimize(result.trajectory.final_wealth);
    }
}
BENCHMARK(bench_solve_max_trades)->Unit(benchmark::kMillisecond);

void bench_solve_min_wait(benchmark::State& state) {
    const auto& panel = large_panel();
    const auto costs = CostSchedule::uniform(panel.universe, 0.005, 1.0);
    for (auto _ : state) {
        auto result = solve(panel, costs, ConstraintMode::min_wait(10), 1e6);
        benchmark::DoNotOptimize(result.trajectory.final_wealth);
    }
}
BENCHMARK(bench_solve_min_wait)->Unit(benchmark::kMillisecond);

void bench_expand_layer(benchmark::State& state) {
    const auto& panel = small_panel();
    const auto costs = CostSchedule::uniform(panel.universe, 0.005, 1.0);
    const auto mode = ConstraintMode::unconstrained();

    std::vector<int> all_ids(panel.universe.n_investments());
    for (std::size_t i = 0; i < all_ids.size(); ++i) all_ids[i] = static_cast<int>(i);

    Layer layer;
    layer.t = 0;
    layer.aux_span = mode.aux_span();
    layer.slots.resize(static_cast<std::size_t>(panel.universe.n_investments()) * mode.aux_span());
    layer.slots[layer.slot_of(0, 0)] = LayerEntry{initial_state(1e6, mode.wait_policy()), -1};
    for (int t = 1; t <= 30; ++t) layer = expand_layer(layer, t, panel, costs, mode, all_ids);

    for (auto _ : state) {
        auto next = expand_layer(layer, 31, panel, costs, mode, all_ids);
        benchmark::DoNotOptimize(next.count());
    }
}
BENCHMARK(bench_expand_layer);

} // namespace

BENCHMARK_MAIN();
