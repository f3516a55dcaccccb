// Copyright 2026 The passage-lab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "passage/kernels.hpp"
#include "passage/mhs.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

using namespace passage;

void BM_SelectionSerial(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::selection_tally_serial(0.8, 0.5, state.range(0), 42, kDefaultShards));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SelectionParallel(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::selection_tally_parallel(0.8, 0.5, state.range(0), 42, kDefaultShards));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

struct ResponseInputs {
    std::vector<Ensemble> ensembles;
    std::vector<SpherePoint> directions;
};

ResponseInputs response_inputs(int n) {
    Rng rng(3);
    ResponseInputs in;
    for (int i = 0; i < n; ++i) {
        in.ensembles.push_back(random_ensemble(rng));
    }
    in.directions = random_directions(2 * n, rng);
    return in;
}

void BM_ResponseSerial(benchmark::State &state) {
    const auto in = response_inputs(static_cast<int>(state.range(0)));
    const auto law = ProbabilityLaw::cos4();
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::response_matrix_serial(law, in.ensembles, in.directions));
    }
}

void BM_ResponseParallel(benchmark::State &state) {
    const auto in = response_inputs(static_cast<int>(state.range(0)));
    const auto law = ProbabilityLaw::cos4();
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::response_matrix_parallel(law, in.ensembles, in.directions));
    }
}

void BM_BernoulliSerial(benchmark::State &state) {
    const std::vector<double> p(64, 0.37);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::bernoulli_counts_serial(p, state.range(0), 11));
    }
}

void BM_BernoulliParallel(benchmark::State &state) {
    const std::vector<double> p(64, 0.37);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::bernoulli_counts_parallel(p, state.range(0), 11));
    }
}

} // namespace

BENCHMARK(BM_SelectionSerial)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SelectionParallel)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ResponseSerial)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ResponseParallel)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BernoulliSerial)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BernoulliParallel)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
