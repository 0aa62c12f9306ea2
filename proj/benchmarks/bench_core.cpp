#include <benchmark/benchmark.h>

#include <cmath>

#include "relrocket/control.hpp"
#include "relrocket/controllers.hpp"
#include "relrocket/dynamics.hpp"
#include "relrocket/linearize.hpp"
#include "relrocket/simulate.hpp"

using namespace relrocket;

namespace {

const RocketParams kRel = RocketParams::natural(Model::Relativistic, 1.0, 1.0);
const RocketParams kChemical = RocketParams::natural(Model::Relativistic, 1.0, 1e-4);

void BM_RelAccel(benchmark::State& state) {
    double v = 0.0;
    for (auto _ : state) {
        v = std::fmod(v + 1e-4, 0.9);
        benchmark::DoNotOptimize(rel_accel(v, -1.0, kRel));
    }
}
BENCHMARK(BM_RelAccel);

void BM_CompensatorGain(benchmark::State& state) {
    double v = 0.0;
    for (auto _ : state) {
        v = std::fmod(v + 1e-4, 0.9);
        benchmark::DoNotOptimize(compensator_gain(v, kRel).value);
    }
}
BENCHMARK(BM_CompensatorGain);

void BM_CompensatorGainLargeExponent(benchmark::State& state) {
    // vbar/c = 1e-4 puts the ratio exponent at 5000: log-space path under stress
    double v = 0.0;
    for (auto _ : state) {
        v = std::fmod(v + 1e-5, 0.05);
        benchmark::DoNotOptimize(compensator_gain(v, kChemical).value);
    }
}
BENCHMARK(BM_CompensatorGainLargeExponent);

void BM_MassVelocityRoundTrip(benchmark::State& state) {
    double v = 0.1;
    for (auto _ : state) {
        v = std::fmod(v + 1e-4, 0.9);
        benchmark::DoNotOptimize(
            velocity_from_mass_ratio(mass_ratio_from_velocity(v, kRel), kRel));
    }
}
BENCHMARK(BM_MassVelocityRoundTrip);

void BM_Rk4Step(benchmark::State& state) {
    OpenLoopController ctl(OpenLoopController::Input::Virtual,
                           [](double t) { return 0.3 * std::sin(t); }, kRel);
    SimState s;
    s.m = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(step_rk4(s, ctl, 1e-3, kRel, SimMode::Ideal));
    }
}
BENCHMARK(BM_Rk4Step);

void BM_ClosedLoopRun(benchmark::State& state) {
    const GainVector k = place_poles(kRel, {std::complex<double>(-1.0, 0.0),
                                            std::complex<double>(-1.0, 0.0)});
    SimConfig cfg;
    cfg.dt = 1e-3;
    cfg.horizon = static_cast<double>(state.range(0)) * 1e-3;
    for (auto _ : state) {
        StateFeedbackController ctl(k, kRel);
        SimState s;
        s.kin.p = 1.0;
        s.m = 1.0;
        benchmark::DoNotOptimize(run_closed_loop(kRel, s, cfg, ctl));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ClosedLoopRun)->Arg(1000)->Arg(10000);

} // namespace

BENCHMARK_MAIN();
