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
 * @file grad.hpp
 * Gradients of an upstream-weighted sum of head outputs,
 * sum_m upstream[m] * y_m, with respect to theta and every head's phi.
 *
 * Three engines are provided: reverse-mode adjoint (used for training),
 * the parameter-shift rule, and central finite differences (test oracle).
 */
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "anovqc/model.hpp"

namespace anovqc {

struct GradientBundle {
    std::vector<double> d_theta;              // same layout as AnoVqcModel::theta
    std::vector<std::vector<double>> d_phi;   // one packed block per head

    [[nodiscard]] static GradientBundle zeros_like(const AnoVqcModel &model);

    /// Same ordering as AnoVqcModel::flatten_parameters.
    [[nodiscard]] std::vector<double> flatten() const;

    /// this += scale * other. Shapes must match.
    void add_scaled(const GradientBundle &other, double scale);
};

struct ValueAndGradient {
    std::vector<double> outputs;  // raw head expectations
    GradientBundle grad;
};

/// Maps head outputs to the upstream weights dLoss/dy_m.
using UpstreamFn = std::function<std::vector<double>(std::span<const double> outputs)>;

/**
 * @brief Forward pass and adjoint gradient sharing one state preparation.
 *
 * `upstream_of` is called once with the head outputs; its result weights
 * the gradient.
 */
[[nodiscard]] ValueAndGradient adjoint_value_and_gradient(const AnoVqcModel &model,
                                                          std::span<const double> x,
                                                          const UpstreamFn &upstream_of);

/// One forward and one backward statevector sweep, independent of parameter count.
[[nodiscard]] GradientBundle adjoint_gradient(const AnoVqcModel &model, std::span<const double> x,
                                              std::span<const double> upstream);

/// Two-term shift rule dy/dtheta = [y(theta + pi/2) - y(theta - pi/2)] / 2.
[[nodiscard]] GradientBundle param_shift_gradient(const AnoVqcModel &model,
                                                  std::span<const double> x,
                                                  std::span<const double> upstream);

inline constexpr double kDefaultFdStep = 1e-5;

/// Central differences on every theta and phi entry. h must lie in [1e-7, 1e-3].
[[nodiscard]] GradientBundle finite_difference_gradient(const AnoVqcModel &model,
                                                        std::span<const double> x,
                                                        std::span<const double> upstream,
                                                        double h = kDefaultFdStep);

} // namespace anovqc
