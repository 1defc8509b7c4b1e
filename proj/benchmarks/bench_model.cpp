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

// Forward pass and gradient engines. The adjoint/shift pair at growing L shows
// the O(L) versus O(L^2) cost split.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "anovqc/grad.hpp"
#include "anovqc/model.hpp"
#include "anovqc/train.hpp"

namespace {

using namespace anovqc;

AnoVqcModel make_model(std::size_t n, std::size_t layers, std::size_t k, std::size_t side) {
    ModelConfig c;
    c.n_qubits = n;
    c.layers = layers;
    c.k_local = k;
    c.hr_height = side;
    c.hr_width = side;
    TrainConfig t;
    t.rng_seed = 1;
    return init_model(c, t);
}

std::vector<double> input(std::size_t n) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(n);
    for (auto &v : x) {
        v = u(rng);
    }
    return x;
}

// Full-size SR model: 16 qubits, L = 4, HR side 4 * scale.
void BM_Forward(benchmark::State &state) {
    const auto scale = static_cast<std::size_t>(state.range(0));
    const auto k = static_cast<std::size_t>(state.range(1));
    const auto m = make_model(16, 4, k, 4 * scale);
    const auto x = input(16);
    for (auto _ : state) {
        benchmark::DoNotOptimize(forward(m, x));
    }
}
BENCHMARK(BM_Forward)->ArgsProduct({{3, 4, 5}, {2, 3}})->Unit(benchmark::kMillisecond);

void BM_AdjointFull(benchmark::State &state) {
    const auto scale = static_cast<std::size_t>(state.range(0));
    const auto k = static_cast<std::size_t>(state.range(1));
    const auto m = make_model(16, 4, k, 4 * scale);
    const auto x = input(16);
    const std::vector<double> up(m.heads.size(), 1e-2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(adjoint_gradient(m, x, up));
    }
}
BENCHMARK(BM_AdjointFull)->ArgsProduct({{3, 4, 5}, {2, 3}})->Unit(benchmark::kMillisecond);

// Small register so the parameter-shift engine stays affordable.
void BM_AdjointVsLayers(benchmark::State &state) {
    const auto layers = static_cast<std::size_t>(state.range(0));
    const auto m = make_model(8, layers, 2, 3);
    const auto x = input(8);
    const std::vector<double> up(m.heads.size(), 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(adjoint_gradient(m, x, up));
    }
}
BENCHMARK(BM_AdjointVsLayers)->RangeMultiplier(2)->Range(1, 16)->Unit(benchmark::kMicrosecond);

void BM_ParamShiftVsLayers(benchmark::State &state) {
    const auto layers = static_cast<std::size_t>(state.range(0));
    const auto m = make_model(8, layers, 2, 3);
    const auto x = input(8);
    const std::vector<double> up(m.heads.size(), 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(param_shift_gradient(m, x, up));
    }
}
BENCHMARK(BM_ParamShiftVsLayers)->RangeMultiplier(2)->Range(1, 16)->Unit(benchmark::kMicrosecond);

} // namespace
