#include <benchmark/benchmark.h>

#include "recoup/experiments.hpp"
#include "recoup/instance_gen.hpp"
#include "recoup/problem.hpp"
#include "recoup/repair.hpp"
#include "recoup/search.hpp"

using namespace recoup;

namespace {

ProjectState paper_scale_instance(std::uint64_t seed) {
    InstanceSpec spec;  // 25 classes over 15 modules
    return generate_instance(spec, seed);
}

void bm_additive_heuristic(benchmark::State& bench) {
    const ProjectState state = paper_scale_instance(7);
    const RefactorProblem problem(state, Alpha::parse("1.0"));
    for (auto _ : bench)
        benchmark::DoNotOptimize(additive_heuristic(problem, problem.initial()));
}
BENCHMARK(bm_additive_heuristic);

void bm_applicable_actions(benchmark::State& bench) {
    const ProjectState state = paper_scale_instance(7);
    const RefactorProblem problem(state, Alpha::parse("1.0"));
    for (auto _ : bench)
        benchmark::DoNotOptimize(problem.applicable_actions(problem.initial()));
}
BENCHMARK(bm_applicable_actions);

void bm_transitive_closure(benchmark::State& bench) {
    const ProjectState state = paper_scale_instance(11);
    for (auto _ : bench) benchmark::DoNotOptimize(transitive_closure(state));
}
BENCHMARK(bm_transitive_closure);

void bm_solve_additive(benchmark::State& bench) {
    const ProjectState state = paper_scale_instance(static_cast<std::uint64_t>(bench.range(0)));
    const RefactorProblem problem(state, Alpha::parse("1.0"));
    const RefactorHeuristic heuristic(HeuristicKind::Additive, problem);
    for (auto _ : bench) {
        auto outcome = best_first_search(problem, heuristic);
        benchmark::DoNotOptimize(outcome);
    }
}
BENCHMARK(bm_solve_additive)->Arg(1)->Arg(2)->Arg(3);

void bm_solve_zero(benchmark::State& bench) {
    const ProjectState state = paper_scale_instance(static_cast<std::uint64_t>(bench.range(0)));
    const RefactorProblem problem(state, Alpha::parse("1.0"));
    const RefactorHeuristic heuristic(HeuristicKind::Zero, problem);
    for (auto _ : bench) {
        auto outcome = best_first_search(problem, heuristic);
        benchmark::DoNotOptimize(outcome);
    }
}
BENCHMARK(bm_solve_zero)->Arg(1);

void bm_repair(benchmark::State& bench) {
    const ProjectState state = paper_scale_instance(13);
    const RefactorProblem problem(state, Alpha::parse("1.0"));
    const RefactorHeuristic heuristic(HeuristicKind::Additive, problem);
    const auto outcome = best_first_search(problem, heuristic);
    for (auto _ : bench)
        benchmark::DoNotOptimize(
            repair(problem.original_closure(), *outcome.terminal, state.inter_count()));
}
BENCHMARK(bm_repair);

}  // namespace

BENCHMARK_MAIN();
