#include <benchmark/benchmark.h>

#include "qbargain/mcsim.hpp"
#include "qbargain/rwgame.hpp"

using namespace qbargain;

namespace {

rw::SurfaceSpec big_surface() {
    rw::SurfaceSpec s;
    s.a_steps = 401;
    s.p01_steps = 201;
    return s;
}

mc::SimConfig sim_config() {
    mc::SimConfig cfg;
    cfg.pair = {Dirac{0.85096}, Gaussian{0.0, 1.0}};
    cfg.p10 = 0.5;
    cfg.rounds = 1'000'000;
    cfg.seed = 1;
    return cfg;
}

void BM_SurfaceSerial(benchmark::State& state) {
    const auto spec = big_surface();
    for (auto _ : state) benchmark::DoNotOptimize(rw::profit_surface_serial(spec));
}

void BM_SurfaceParallel(benchmark::State& state) {
    const auto spec = big_surface();
    for (auto _ : state) benchmark::DoNotOptimize(rw::profit_surface(spec));
}

void BM_SimulationSerial(benchmark::State& state) {
    const auto cfg = sim_config();
    for (auto _ : state) benchmark::DoNotOptimize(mc::run_simulation_serial(cfg));
}

void BM_SimulationParallel(benchmark::State& state) {
    const auto cfg = sim_config();
    const int workers = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(mc::run_simulation(cfg, workers));
}

}  // namespace

BENCHMARK(BM_SurfaceSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SurfaceParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulationSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulationParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
