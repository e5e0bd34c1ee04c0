#include <benchmark/benchmark.h>

#include "chaineq/analysis.hpp"
#include "chaineq/dynamics.hpp"
#include "chaineq/fixed_point.hpp"

using namespace chaineq;

namespace {

ChainParams params_for(int n) {
    ChainParams params;
    params.n = n;
    params.length = 1.0;
    params.mass = 1.0;
    params.damping = 1.0;
    params.law = PairLaw::power(1.0, 2.0);
    params.field = ForceField::affine(1.0, -1.0);
    return params;
}

void BM_Propagate(benchmark::State& state) {
    const ChainParams params = params_for(static_cast<int>(state.range(0)));
    const double x2 = params.uniform_gap();
    for (auto _ : state)
        benchmark::DoNotOptimize(propagate(params, x2));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Propagate)->RangeMultiplier(4)->Range(64, 4096);

void BM_ShootSolve(benchmark::State& state) {
    const ChainParams params = params_for(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(shoot_solve(params));
}
BENCHMARK(BM_ShootSolve)->RangeMultiplier(4)->Range(64, 4096);

void BM_Residual(benchmark::State& state) {
    const ChainParams params = params_for(static_cast<int>(state.range(0)));
    const Configuration config = shoot_solve(params).positions;
    for (auto _ : state)
        benchmark::DoNotOptimize(residual(params, config));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Residual)->RangeMultiplier(4)->Range(64, 4096);

void BM_OracleMinimize(benchmark::State& state) {
    const ChainParams params = params_for(static_cast<int>(state.range(0)));
    const double tol = 1e-6 * params.law.force(params.uniform_gap());
    const Configuration init = zero_force_solution(params.n, params.length);
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle_minimize(params, init, tol));
}
BENCHMARK(BM_OracleMinimize)->DenseRange(4, 12, 4);

void BM_VerletSteps(benchmark::State& state) {
    const ChainParams params = params_for(static_cast<int>(state.range(0)));
    const double dt = default_timestep(params);
    ChainState st;
    st.positions = zero_force_solution(params.n, params.length);
    st.velocities.assign(params.n, 0.0);
    for (auto _ : state)
        step(params, st, dt);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_VerletSteps)->RangeMultiplier(4)->Range(8, 512);

void BM_GapProfileSweep(benchmark::State& state) {
    const ChainParams params = params_for(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        const FixedPointResult solved = shoot_solve(params);
        benchmark::DoNotOptimize(gap_profile(solved.positions, params.length));
    }
}
BENCHMARK(BM_GapProfileSweep)->Arg(800);

} // namespace

BENCHMARK_MAIN();
