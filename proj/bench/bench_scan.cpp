// Copyright 2026 The Previval Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "previval/analysis.hpp"
#include "previval/oracle.hpp"

using namespace previval;
using namespace previval::analysis;

namespace {

const Grid kFig1Grid{0.0, 50.0, 0.02};

Quantity fig1_quantity() {
    return RetrodictiveProbability{
        PreparationEnsemble::uniform_excited_ground(), "g",
        pom_projector(excited_state(), "e")};
}

ScanContext fig1_context() {
    return {CoherentField(5.0), {0.0, 1.0}, kDefaultTailTolerance, "fig1"};
}

void BM_ScanSerial(benchmark::State &state) {
    const auto quantity = fig1_quantity();
    const auto context = fig1_context();
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::scan(quantity, kFig1Grid, context));
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<int64_t>(kFig1Grid.size()));
}
BENCHMARK(BM_ScanSerial)->Unit(benchmark::kMillisecond);

void BM_ScanParallel(benchmark::State &state) {
    omp_set_num_threads(static_cast<int>(state.range(0)));
    const auto quantity = fig1_quantity();
    const auto context = fig1_context();
    for (auto _ : state) {
        benchmark::DoNotOptimize(scan(quantity, kFig1Grid, context));
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<int64_t>(kFig1Grid.size()));
}
BENCHMARK(BM_ScanParallel)
    ->RangeMultiplier(2)
    ->Range(1, 8)
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

void BM_OracleDeviation(benchmark::State &state) {
    const auto initial =
        JointState::product(excited_state(), CoherentField(5.0));
    const auto grid = Grid{0.0, 50.0, 0.1}.points();
    for (auto _ : state) {
        benchmark::DoNotOptimize(max_deviation(initial, {0.0, 1.0}, grid));
    }
}
BENCHMARK(BM_OracleDeviation)->Unit(benchmark::kMillisecond)->UseRealTime();

} // namespace

BENCHMARK_MAIN();
