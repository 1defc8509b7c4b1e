// Copyright 2026 The anovqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Gate and reduced-density-matrix kernels on n-qubit states.

#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "anovqc/observable.hpp"
#include "anovqc/statevector.hpp"

namespace {

using anovqc::PauliAxis;
using anovqc::StateVector;

StateVector spread_state(std::size_t n) {
    auto s = StateVector::zero(n);
    for (std::size_t q = 0; q < n; ++q) {
        s.apply_hadamard(q).apply_rotation(q, PauliAxis::Z, 0.1 * static_cast<double>(q + 1));
    }
    return s;
}

void BM_Hadamard(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto s = spread_state(n);
    std::size_t q = 0;
    for (auto _ : state) {
        s.apply_hadamard(q);
        q = (q + 1) % n;
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.size()));
}
BENCHMARK(BM_Hadamard)->Arg(10)->Arg(16)->Arg(20);

void BM_Rotation(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto axis = static_cast<PauliAxis>(state.range(1));
    auto s = spread_state(n);
    std::size_t q = 0;
    for (auto _ : state) {
        s.apply_rotation(q, axis, 0.3);
        q = (q + 1) % n;
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.size()));
}
BENCHMARK(BM_Rotation)
    ->ArgsProduct({{16}, {static_cast<long>(PauliAxis::X), static_cast<long>(PauliAxis::Y),
                         static_cast<long>(PauliAxis::Z)}});

void BM_Cnot(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto s = spread_state(n);
    std::size_t q = 0;
    for (auto _ : state) {
        s.apply_cnot(q, (q + 1) % n);
        q = (q + 1) % n;
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.size()));
}
BENCHMARK(BM_Cnot)->Arg(10)->Arg(16)->Arg(20);

void BM_ReducedDensityMatrix(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto k = static_cast<std::size_t>(state.range(1));
    const auto s = spread_state(n);
    std::vector<std::size_t> subset(k);
    std::iota(subset.begin(), subset.end(), n / 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(anovqc::reduced_density_matrix(s, subset));
    }
}
BENCHMARK(BM_ReducedDensityMatrix)->ArgsProduct({{16}, {1, 2, 3}});

} // namespace

BENCHMARK_MAIN();
