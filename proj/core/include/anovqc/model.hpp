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

/**
 * @file model.hpp
 * Adaptive non-local observable VQC: angle encoding, a staggered-CNOT
 * variational ansatz, and one trainable k-local observable per output pixel.
 */
#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "anovqc/observable.hpp"
#include "anovqc/statevector.hpp"

namespace anovqc {

struct ModelConfig {
    std::size_t n_qubits{16};
    std::size_t layers{4};
    std::size_t k_local{2};
    std::size_t hr_height{12};
    std::size_t hr_width{12};
    /// One axis per qubit; empty means Y on every wire.
    std::vector<PauliAxis> encoding_axes{};
    double angle_scale{std::numbers::pi};

    [[nodiscard]] std::size_t head_count() const noexcept { return hr_height * hr_width; }
    [[nodiscard]] PauliAxis encoding_axis(std::size_t q) const {
        return encoding_axes.empty() ? PauliAxis::Y : encoding_axes.at(q);
    }
    /// Throws ConfigError on any inconsistent field.
    void validate() const;

    friend bool operator==(const ModelConfig &, const ModelConfig &) = default;
};

struct MeasurementHead {
    std::vector<std::size_t> subset;
    HermitianParams params;
};

/**
 * @brief Variational angles plus one measurement head per HR pixel.
 *
 * theta is stored row-major as n_qubits x layers: theta[q * layers + l].
 * Heads are in row-major HR pixel order.
 */
struct AnoVqcModel {
    ModelConfig config;
    std::vector<double> theta;
    std::vector<MeasurementHead> heads;

    /// theta = 0, sliding-window subsets, zero observables.
    [[nodiscard]] static AnoVqcModel zeros(const ModelConfig &config);

    [[nodiscard]] double &angle(std::size_t q, std::size_t layer) {
        return theta[q * config.layers + layer];
    }
    [[nodiscard]] double angle(std::size_t q, std::size_t layer) const {
        return theta[q * config.layers + layer];
    }

    /// Throws ConfigError if shapes or subsets disagree with the config.
    void validate() const;

    /// theta followed by every head's packed phi, in head order.
    [[nodiscard]] std::size_t parameter_count() const noexcept;
    [[nodiscard]] std::vector<double> flatten_parameters() const;
    void assign_parameters(std::span<const double> flat);
};

/// Wraparound window [m, m+1, ..., m+k-1] mod n.
[[nodiscard]] std::vector<std::size_t> head_subset(std::size_t head_index, std::size_t n_qubits,
                                                   std::size_t k);

/// CNOT (control, target) pairs of one entangling layer: even ladder rungs, then odd.
[[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>>
entangler_pairs(std::size_t n_qubits);

/// H then R_axis(angle_scale * x_q) on every wire of |0...0>. x must lie in [0, 1].
[[nodiscard]] StateVector encode(std::span<const double> x, const ModelConfig &config);

/// For each layer: entangler, then R_y(theta[q][l]) on every wire.
void apply_variational(StateVector &state, std::span<const double> theta,
                       const ModelConfig &config);

/// Exact inverse of apply_variational.
void apply_variational_inverse(StateVector &state, std::span<const double> theta,
                               const ModelConfig &config);

/// Heads sharing a qubit subset share one reduced density matrix.
struct SubsetGroups {
    std::vector<std::vector<std::size_t>> subsets;
    std::vector<std::size_t> head_group; // head index -> group index
};

[[nodiscard]] SubsetGroups group_heads(std::span<const MeasurementHead> heads);

/// U(theta) V(x) |0...0>.
[[nodiscard]] StateVector prepare_state(const AnoVqcModel &model, std::span<const double> x);

/// Raw (unclamped) head expectations, one per HR pixel.
[[nodiscard]] std::vector<double> forward(const AnoVqcModel &model, std::span<const double> x);

/// Head expectations for an already prepared state.
[[nodiscard]] std::vector<double> measure_heads(const AnoVqcModel &model,
                                                const StateVector &state);

} // namespace anovqc
