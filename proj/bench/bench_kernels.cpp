// Copyright 2026 The knrsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include "knr/fluctuations.hpp"
#include "knr/grid.hpp"
#include "knr/lindblad.hpp"
#include "knr/steady_state.hpp"

namespace {

using namespace knr;

const ResonatorParams kScaled{1000.0, -0.0625, -1.25e-4, 1.0};
const ResonatorParams kSampleA{hz_to_angular(6.4535e9), hz_to_angular(-625e3), hz_to_angular(-1.25e3),
                               hz_to_angular(10e6)};

Exec exec_of(const benchmark::State &state) { return state.range(0) == 0 ? Exec::kSerial : Exec::kParallel; }

void BM_StabilityDiagram(benchmark::State &state) {
    const auto omegas = linear_grid(-4.0, 8.0, 120);
    const auto powers = log_grid(0.05, 20.0, 120);
    for (auto _ : state) benchmark::DoNotOptimize(stability_diagram(kScaled, omegas, powers, exec_of(state)));
}

void BM_HeatingSweep(benchmark::State &state) {
    const double p_plus = bifurcation_thresholds(kSampleA, 3.9).p_plus;
    std::vector<double> watts;
    for (double f : linear_grid(1.05, 2.0, 2000)) watts.push_back(f * p_plus);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            heating_sweep(kSampleA, 3.9, watts, Branch::kHigh, TeffConvention::kDressedLab, exec_of(state)));
    }
}

void BM_EmissionSpectrum(benchmark::State &state) {
    const auto drive = drive_at(kScaled, 2.8, 0.5);
    const auto low = find_branch(solve_steady_states(kScaled, drive), Branch::kLow);
    const auto ss = displaced_frame_steady_state(kScaled, drive, low->alpha, 12, 40);
    const auto grid = linear_grid(-5.0, 5.0, 32);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            emission_spectrum(ss.liouvillian, ss.rho, grid, CorrelationOrdering::kEmission, exec_of(state)));
    }
}

}  // namespace

BENCHMARK(BM_StabilityDiagram)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HeatingSweep)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EmissionSpectrum)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
