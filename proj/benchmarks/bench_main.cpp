#include <benchmark/benchmark.h>

#include "wearsim/scenario_io.hpp"
#include "wearsim/sim_engine.hpp"
#include "wearsim/thermal.hpp"
#include "wearsim/workload.hpp"

using namespace wearsim;

namespace {

const std::string kScenarioDir = WEARSIM_SCENARIO_DIR;

void BM_SimulateTurion(benchmark::State& state)
{
    Scenario sc = load_scenario(kScenarioDir + "/turion6.json");
    sc.trace_dt_s = sc.duration_s / static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate(sc));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateTurion)->Arg(100)->Arg(1000)->Arg(10000);

void BM_ComparePolicies(benchmark::State& state)
{
    const Scenario sc = load_scenario(kScenarioDir + "/full_span.json");
    const std::vector<TransitionPolicy> policies = {TransitionPolicy::direct(), TransitionPolicy::stepped(),
                                                    TransitionPolicy::stepped(0.25), TransitionPolicy::stepped(0.5)};
    const bool parallel = state.range(0) != 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(compare_policies(sc, policies, parallel));
    }
}
BENCHMARK(BM_ComparePolicies)->Arg(0)->Arg(1)->UseRealTime();

void BM_ThermalWear(benchmark::State& state)
{
    const ThermalParams p{0.5, 10.0, 25.0, 25.0, 1000.0};
    const double dt = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate_thermal_wear(p, {25.0, 0.0}, 20.0, dt));
    }
}
BENCHMARK(BM_ThermalWear)->Arg(1)->Arg(5)->Arg(50);

void BM_MinEnergyLevel(benchmark::State& state)
{
    ProcessorSpec spec;
    std::vector<double> freqs;
    std::vector<double> vdds;
    for (int i = 0; i < state.range(0); ++i) {
        freqs.push_back(8e8 + 1e7 * i);
        vdds.push_back(0.9 + 0.005 * i);
    }
    spec.levels = make_ladder(freqs, vdds);
    spec.coeff_a = 5e-9;
    spec.coeff_b = 1.0;
    spec.p_device_w = 2.0;
    spec.p_idle_w = 3.0;
    const Task task{"t", 5e9, 0.0, 10.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(min_energy_level(spec, task, 0.0).index);
    }
}
BENCHMARK(BM_MinEnergyLevel)->Arg(6)->Arg(64);

} // namespace

BENCHMARK_MAIN();
