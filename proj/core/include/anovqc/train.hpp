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
 * @file train.hpp
 * Combined reconstruction loss, Adam, and the epoch/batch training loop.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "anovqc/data.hpp"
#include "anovqc/grad.hpp"
#include "anovqc/metrics.hpp"
#include "anovqc/model.hpp"

namespace anovqc {

struct TrainConfig {
    double learning_rate{1e-2};
    double adam_beta1{0.9};
    double adam_beta2{0.999};
    double adam_eps{1e-8};
    std::size_t epochs{10};
    std::size_t batch_size{32};
    double c1{1.0};  // MSE weight
    double c2{0.0};  // perceptual-proxy weight
    std::uint64_t rng_seed{0};
    double theta_init_range{std::numbers::pi}; // theta ~ U[-range, range]
    double phi_init_std{0.1};                  // phi ~ N(0, std)
    /// Worker threads for per-sample passes; 0 picks hardware concurrency.
    std::size_t num_threads{0};

    void validate() const;
};

struct AdamState {
    std::uint64_t step{0};
    std::vector<double> m;
    std::vector<double> v;

    [[nodiscard]] static AdamState zeros(std::size_t parameter_count);
};

/// Bias-corrected Adam update of `params` in place.
void adam_step(AdamState &state, std::span<double> params, std::span<const double> grads,
               const TrainConfig &config);

struct LossResult {
    double loss{0.0};
    std::vector<double> d_pred;
};

/**
 * @brief c1 * MSE(pred, target) + c2 * perceptual_proxy(pred, target) and its
 * gradient with respect to the raw predictions.
 */
[[nodiscard]] LossResult combined_loss(std::span<const double> pred, const GrayImage &target,
                                       double c1, double c2);

/// theta ~ U[-range, range], phi ~ N(0, phi_init_std), seeded from rng_seed.
[[nodiscard]] AnoVqcModel init_model(const ModelConfig &model_config, const TrainConfig &config);

struct SampleGradient {
    double loss{0.0};
    GradientBundle grad;
};

/// Loss of one sample and its adjoint gradient.
[[nodiscard]] SampleGradient sample_gradient(const AnoVqcModel &model, const SrSample &sample,
                                             double c1, double c2);

/// Throws ConfigError if any sample disagrees with the model's input/output shape.
void check_dataset_shape(const ModelConfig &config, std::span<const SrSample> samples);

/// Raw predictions for every sample, computed on `num_threads` workers.
[[nodiscard]] std::vector<std::vector<double>>
predict_all(const AnoVqcModel &model, std::span<const SrSample> samples, std::size_t num_threads);

/// Mean combined loss over a dataset.
[[nodiscard]] double dataset_loss(const AnoVqcModel &model, std::span<const SrSample> samples,
                                  double c1, double c2, std::size_t num_threads);

/// Metrics of raw predictions against HR targets, averaged over samples.
[[nodiscard]] MetricReport evaluate_dataset(const AnoVqcModel &model,
                                            std::span<const SrSample> samples,
                                            std::size_t num_threads);

/// Train MSE of always predicting the per-pixel mean HR image of `fit_on`.
[[nodiscard]] double mean_image_baseline_mse(std::span<const SrSample> fit_on,
                                             std::span<const SrSample> evaluate_on);

struct EpochLog {
    std::size_t epoch{0};
    double train_loss{0.0};
    std::optional<MetricReport> validation;
};

inline constexpr const char *kEpochCsvHeader = "epoch,train_loss,val_mse,val_psnr,val_ssim";
[[nodiscard]] std::string epoch_csv_row(const EpochLog &log);

struct FitOptions {
    std::span<const SrSample> validation{};
    /// Epochs already completed; training resumes at start_epoch + 1.
    std::size_t start_epoch{0};
    std::optional<AdamState> adam{};
    /// Log an epoch-0 row for the untrained model when starting fresh.
    bool log_initial{true};
    std::function<void(const EpochLog &, const AnoVqcModel &, const AdamState &)> on_epoch{};
};

struct FitResult {
    AnoVqcModel model;
    AdamState adam;
    std::vector<EpochLog> log;
};

/**
 * @brief Minibatch Adam on the mean per-sample loss.
 *
 * Epoch e shuffles with a generator seeded by (rng_seed, e), so a resumed run
 * follows the same trajectory as an uninterrupted one. Each logged
 * train_loss is the loss of the end-of-epoch model over the full training set.
 * Throws NumericalError if the loss becomes non-finite.
 */
[[nodiscard]] FitResult fit(AnoVqcModel model, std::span<const SrSample> dataset,
                            const TrainConfig &config, const FitOptions &options = {});

} // namespace anovqc
