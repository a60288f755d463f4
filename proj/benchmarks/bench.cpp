#include <benchmark/benchmark.h>

#include "pricing/learners.hpp"
#include "pricing/mdp.hpp"
#include "pricing/simulate.hpp"

namespace {

void BM_SolveOptimal(benchmark::State& state) {
    const auto model = pricing::default_model();
    for (auto _ : state) benchmark::DoNotOptimize(pricing::solve_optimal(model));
}
BENCHMARK(BM_SolveOptimal);

void BM_GenerateDataset(benchmark::State& state) {
    const auto model = pricing::default_model();
    const auto behavior = pricing::sim::scenario_behavior(model, 2);
    const pricing::sim::SeededRng rng(1);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            pricing::sim::generate_dataset(model, behavior, state.range(0), rng, 0));
}
BENCHMARK(BM_GenerateDataset)->Arg(20)->Arg(1280);

void BM_RefinedPessimistic(benchmark::State& state) {
    const auto model = pricing::default_model();
    const auto behavior = pricing::sim::scenario_behavior(model, 2);
    const auto ds =
        pricing::sim::generate_dataset(model, behavior, 20, pricing::sim::SeededRng(1), 0);
    pricing::learn::LearnerConfig cfg{1.0, static_cast<int>(state.range(0)), model.lambda_min,
                                      std::max(model.lambda_min, 1.5 * ds.max_demand())};
    for (auto _ : state)
        benchmark::DoNotOptimize(pricing::learn::learn_refined_pessimistic(ds, cfg));
}
BENCHMARK(BM_RefinedPessimistic)->Arg(101)->Arg(1001);

void BM_Opportunistic(benchmark::State& state) {
    const auto model = pricing::default_model();
    const auto behavior = pricing::sim::scenario_behavior(model, 3);
    const auto ds =
        pricing::sim::generate_dataset(model, behavior, 20, pricing::sim::SeededRng(2), 0);
    pricing::learn::LearnerConfig cfg{1.0, 1001, model.lambda_min,
                                      std::max(model.lambda_min, 1.5 * ds.max_demand())};
    for (auto _ : state) benchmark::DoNotOptimize(pricing::learn::learn_opportunistic(ds, cfg));
}
BENCHMARK(BM_Opportunistic);

void BM_ExactEvaluation(benchmark::State& state) {
    const auto model = pricing::default_model();
    const auto policy = pricing::sim::scenario_behavior(model, 1);
    const auto init = pricing::point_mass(15, 15);
    for (auto _ : state)
        benchmark::DoNotOptimize(pricing::evaluate_policy_exact(model, policy, init));
}
BENCHMARK(BM_ExactEvaluation);

}  // namespace

BENCHMARK_MAIN();
