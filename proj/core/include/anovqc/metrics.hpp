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
 * @file metrics.hpp
 * Image quality metrics: MSE, PSNR, SSIM and a Sobel-gradient perceptual
 * proxy that stands in for LPIPS.
 */
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "anovqc/data.hpp"

namespace anovqc {

/// Side length of the SSIM Gaussian window.
inline constexpr std::size_t kSsimWindow = 7;
inline constexpr double kSsimSigma = 1.5;

[[nodiscard]] double mse(const ImageView &a, const ImageView &b);

/// 10 log10(max_value^2 / mse); +inf when mse == 0.
[[nodiscard]] double psnr_from_mse(double mse_value, double max_value = 1.0);
[[nodiscard]] double psnr(const ImageView &a, const ImageView &b, double max_value = 1.0);

/// Normalised 7x7 Gaussian window (sigma 1.5), row-major.
[[nodiscard]] std::vector<double> ssim_window();

/**
 * @brief Single-scale SSIM averaged over all valid 7x7 window positions.
 *
 * C1 = (0.01 max)^2, C2 = (0.03 max)^2. Throws InputError when either side
 * is smaller than the window.
 */
[[nodiscard]] double ssim(const ImageView &a, const ImageView &b, double max_value = 1.0);

/// Sobel gradient magnitude with replicate padding.
[[nodiscard]] std::vector<double> sobel_magnitude(const ImageView &img);

/// Mean squared difference of Sobel magnitudes. Images must be at least 3x3.
[[nodiscard]] double perceptual_proxy(const ImageView &a, const ImageView &b);

/// d perceptual_proxy / d a. Zero-magnitude pixels contribute a zero subgradient.
[[nodiscard]] std::vector<double> perceptual_proxy_grad(const ImageView &a, const ImageView &b);

struct MetricReport {
    double mse{0.0};
    double psnr{0.0};
    double ssim{0.0};
    double perceptual{0.0};
};

[[nodiscard]] MetricReport evaluate_pair(const ImageView &prediction, const ImageView &target);

/// Arithmetic mean of each field.
[[nodiscard]] MetricReport average(const std::vector<MetricReport> &reports);

/// Fixed 6-decimal rendering; infinities render as "inf", NaN as "nan".
[[nodiscard]] std::string format_metric(double value);

} // namespace anovqc
