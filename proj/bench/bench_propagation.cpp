// Serial reference vs OpenMP kernels on the default open-system workload.
#include <benchmark/benchmark.h>

#include <numbers>

#include "ptthermo/propagation.hpp"
#include "ptthermo/thermo.hpp"

using namespace ptthermo;

namespace {

struct Workload {
    PTHamiltonian h = build_pt_hamiltonian({0.5, 1.0, std::numbers::pi / 2});
    EnergyEigensystem e = energy_eigensystem(h);
    BathSpec bath{2.0, 15, 10.0};
    CompositeSystem c = build_composite(h, e, bath, 0.5);
    GeneralizedDensityMatrix rho0 = initial_state(InitialState::Excited, e);
};

const Workload& workload()
{
    static const Workload w;
    return w;
}

void BM_EvolveReference(benchmark::State& state)
{
    const Workload& w = workload();
    const auto times = uniform_grid(20.0, static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(evolve_reference(w.c, w.rho0, w.bath, times));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EvolveSerial(benchmark::State& state)
{
    const Workload& w = workload();
    const auto times = uniform_grid(20.0, static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(evolve(w.c, w.rho0, w.bath, times, ExecPolicy{1}));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EvolveParallel(benchmark::State& state)
{
    const Workload& w = workload();
    const auto times = uniform_grid(20.0, static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(evolve(w.c, w.rho0, w.bath, times, ExecPolicy{0}));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ThermoSeries(benchmark::State& state)
{
    const Workload& w = workload();
    const Trajectory traj = evolve(w.c, w.rho0, w.bath, uniform_grid(20.0, 400));
    const ExecPolicy policy{static_cast<int>(state.range(0))};
    for (auto _ : state)
        benchmark::DoNotOptimize(thermo_series(w.c, w.h, w.bath, traj, policy));
}

} // namespace

BENCHMARK(BM_EvolveReference)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvolveSerial)->Arg(50)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvolveParallel)->Arg(50)->Arg(400)->Unit(benchmark::kMillisecond);
// 1 = serial, 0 = all OpenMP threads
BENCHMARK(BM_ThermoSeries)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
