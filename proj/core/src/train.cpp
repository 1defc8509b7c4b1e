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

#include "anovqc/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "anovqc/errors.hpp"
#include "parallel.hpp"

namespace anovqc {

void TrainConfig::validate() const {
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
        throw ConfigError("learning_rate must be positive");
    }
    if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0) || !(adam_beta2 >= 0.0 && adam_beta2 < 1.0)) {
        throw ConfigError("Adam betas must lie in [0, 1)");
    }
    if (!(adam_eps > 0.0)) {
        throw ConfigError("adam_eps must be positive");
    }
    if (batch_size < 1) {
        throw ConfigError("batch_size must be positive");
    }
    if (!(c1 >= 0.0) || !(c2 >= 0.0) || !(c1 + c2 > 0.0)) {
        throw ConfigError("loss weights need c1 >= 0, c2 >= 0 and c1 + c2 > 0");
    }
    if (!(theta_init_range >= 0.0) || !(phi_init_std >= 0.0)) {
        throw ConfigError("initialisation ranges must be non-negative");
    }
}

AdamState AdamState::zeros(std::size_t parameter_count) {
    return AdamState{0, std::vector<double>(parameter_count, 0.0),
                     std::vector<double>(parameter_count, 0.0)};
}

void adam_step(AdamState &state, std::span<double> params, std::span<const double> grads,
               const TrainConfig &config) {
    if (params.size() != grads.size() || state.m.size() != params.size() ||
        state.v.size() != params.size()) {
        throw Error("Adam shape mismatch: " + std::to_string(params.size()) + " params, " +
                    std::to_string(grads.size()) + " grads, " + std::to_string(state.m.size()) +
                    " moments");
    }
    ++state.step;
    const double b1 = config.adam_beta1;
    const double b2 = config.adam_beta2;
    const auto t = static_cast<double>(state.step);
    const double bias1 = 1.0 - std::pow(b1, t);
    const double bias2 = 1.0 - std::pow(b2, t);
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = grads[i];
        state.m[i] = b1 * state.m[i] + (1.0 - b1) * g;
        state.v[i] = b2 * state.v[i] + (1.0 - b2) * g * g;
        const double m_hat = state.m[i] / bias1;
        const double v_hat = state.v[i] / bias2;
        params[i] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.adam_eps);
    }
}

LossResult combined_loss(std::span<const double> pred, const GrayImage &target, double c1,
                         double c2) {
    const auto tp = target.pixels();
    if (pred.size() != tp.size()) {
        throw InputError("prediction has " + std::to_string(pred.size()) +
                         " pixels, target has " + std::to_string(tp.size()));
    }
    const auto n = static_cast<double>(pred.size());
    LossResult out{0.0, std::vector<double>(pred.size(), 0.0)};
    if (c1 != 0.0) {
        double acc = 0.0;
        for (std::size_t i = 0; i < pred.size(); ++i) {
            const double d = pred[i] - tp[i];
            acc += d * d;
            out.d_pred[i] = c1 * 2.0 * d / n;
        }
        out.loss = c1 * acc / n;
    }
    if (c2 != 0.0) {
        const ImageView pv{target.height(), target.width(), pred};
        out.loss += c2 * perceptual_proxy(pv, target.view());
        const auto g = perceptual_proxy_grad(pv, target.view());
        for (std::size_t i = 0; i < g.size(); ++i) {
            out.d_pred[i] += c2 * g[i];
        }
    }
    return out;
}

AnoVqcModel init_model(const ModelConfig &model_config, const TrainConfig &config) {
    auto model = AnoVqcModel::zeros(model_config);
    std::seed_seq seq{static_cast<std::uint32_t>(config.rng_seed),
                      static_cast<std::uint32_t>(config.rng_seed >> 32), 0x1u};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> angle(-config.theta_init_range,
                                                 config.theta_init_range);
    std::normal_distribution<double> phi(0.0, config.phi_init_std);
    for (auto &t : model.theta) {
        t = config.theta_init_range > 0.0 ? angle(rng) : 0.0;
    }
    for (auto &head : model.heads) {
        for (auto &p : head.params.packed()) {
            p = config.phi_init_std > 0.0 ? phi(rng) : 0.0;
        }
    }
    return model;
}

SampleGradient sample_gradient(const AnoVqcModel &model, const SrSample &sample, double c1,
                               double c2) {
    double loss = 0.0;
    auto vg = adjoint_value_and_gradient(model, sample.lr.pixels(),
                                         [&](std::span<const double> pred) {
                                             auto r = combined_loss(pred, sample.hr, c1, c2);
                                             loss = r.loss;
                                             return std::move(r.d_pred);
                                         });
    return SampleGradient{loss, std::move(vg.grad)};
}

void check_dataset_shape(const ModelConfig &config, std::span<const SrSample> samples) {
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto &s = samples[i];
        if (s.lr.pixels().size() != config.n_qubits) {
            throw ConfigError("sample " + std::to_string(i) + " has " +
                              std::to_string(s.lr.pixels().size()) +
                              " LR pixels but the model has " + std::to_string(config.n_qubits) +
                              " qubits");
        }
        if (s.hr.height() != config.hr_height || s.hr.width() != config.hr_width) {
            throw ConfigError("sample " + std::to_string(i) + " HR size " +
                              std::to_string(s.hr.height()) + "x" + std::to_string(s.hr.width()) +
                              " differs from model output " + std::to_string(config.hr_height) +
                              "x" + std::to_string(config.hr_width));
        }
    }
}

std::vector<std::vector<double>> predict_all(const AnoVqcModel &model,
                                             std::span<const SrSample> samples,
                                             std::size_t num_threads) {
    std::vector<std::vector<double>> preds(samples.size());
    detail::parallel_for(samples.size(), num_threads,
                         [&](std::size_t i) { preds[i] = forward(model, samples[i].lr.pixels()); });
    return preds;
}

double dataset_loss(const AnoVqcModel &model, std::span<const SrSample> samples, double c1,
                    double c2, std::size_t num_threads) {
    if (samples.empty()) {
        throw InputError("empty dataset");
    }
    const auto preds = predict_all(model, samples, num_threads);
    double total = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        total += combined_loss(preds[i], samples[i].hr, c1, c2).loss;
    }
    return total / static_cast<double>(samples.size());
}

MetricReport evaluate_dataset(const AnoVqcModel &model, std::span<const SrSample> samples,
                              std::size_t num_threads) {
    if (samples.empty()) {
        throw InputError("empty dataset");
    }
    const auto preds = predict_all(model, samples, num_threads);
    std::vector<MetricReport> reports;
    reports.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const ImageView pv{samples[i].hr.height(), samples[i].hr.width(), preds[i]};
        reports.push_back(evaluate_pair(pv, samples[i].hr.view()));
    }
    return average(reports);
}

double mean_image_baseline_mse(std::span<const SrSample> fit_on,
                               std::span<const SrSample> evaluate_on) {
    if (fit_on.empty() || evaluate_on.empty()) {
        throw InputError("empty dataset");
    }
    const std::size_t n = fit_on.front().hr.pixels().size();
    std::vector<double> mean(n, 0.0);
    for (const auto &s : fit_on) {
        for (std::size_t i = 0; i < n; ++i) {
            mean[i] += s.hr.pixels()[i];
        }
    }
    for (auto &v : mean) {
        v /= static_cast<double>(fit_on.size());
    }
    double total = 0.0;
    for (const auto &s : evaluate_on) {
        const ImageView mv{s.hr.height(), s.hr.width(), mean};
        total += mse(mv, s.hr.view());
    }
    return total / static_cast<double>(evaluate_on.size());
}

std::string epoch_csv_row(const EpochLog &log) {
    std::string row = std::to_string(log.epoch) + "," + format_metric(log.train_loss) + ",";
    if (log.validation) {
        row += format_metric(log.validation->mse) + "," + format_metric(log.validation->psnr) +
               "," + format_metric(log.validation->ssim);
    } else {
        row += "nan,nan,nan";
    }
    return row;
}

namespace {

EpochLog make_log(std::size_t epoch, const AnoVqcModel &model, std::span<const SrSample> train,
                  const TrainConfig &config, const FitOptions &options) {
    EpochLog log{epoch, dataset_loss(model, train, config.c1, config.c2, config.num_threads), {}};
    if (!std::isfinite(log.train_loss)) {
        throw NumericalError("train loss became non-finite at epoch " + std::to_string(epoch));
    }
    if (!options.validation.empty()) {
        log.validation = evaluate_dataset(model, options.validation, config.num_threads);
    }
    return log;
}

} // namespace

FitResult fit(AnoVqcModel model, std::span<const SrSample> dataset, const TrainConfig &config,
              const FitOptions &options) {
    config.validate();
    model.validate();
    if (dataset.empty()) {
        throw ConfigError("empty dataset");
    }
    check_dataset_shape(model.config, dataset);
    check_dataset_shape(model.config, options.validation);

    FitResult result{std::move(model), options.adam.value_or(AdamState::zeros(0)), {}};
    auto &m = result.model;
    if (!options.adam) {
        result.adam = AdamState::zeros(m.parameter_count());
    } else if (result.adam.m.size() != m.parameter_count() ||
               result.adam.v.size() != m.parameter_count()) {
        throw ConfigError("optimizer state does not match the model's parameter count");
    }

    if (options.start_epoch == 0 && options.log_initial) {
        result.log.push_back(make_log(0, m, dataset, config, options));
        if (options.on_epoch) {
            options.on_epoch(result.log.back(), m, result.adam);
        }
    }

    std::vector<std::size_t> order(dataset.size());
    std::vector<SampleGradient> per_sample;
    for (std::size_t epoch = options.start_epoch + 1; epoch <= config.epochs; ++epoch) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::seed_seq seq{static_cast<std::uint32_t>(config.rng_seed),
                          static_cast<std::uint32_t>(config.rng_seed >> 32), 0x2u,
                          static_cast<std::uint32_t>(epoch)};
        std::mt19937_64 rng(seq);
        std::shuffle(order.begin(), order.end(), rng);

        for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
            const std::size_t count = std::min(config.batch_size, order.size() - start);
            per_sample.assign(count, SampleGradient{});
            detail::parallel_for(count, config.num_threads, [&](std::size_t i) {
                per_sample[i] = sample_gradient(m, dataset[order[start + i]], config.c1, config.c2);
            });
            auto batch_grad = GradientBundle::zeros_like(m);
            for (const auto &sg : per_sample) {
                if (!std::isfinite(sg.loss)) {
                    throw NumericalError("non-finite sample loss at epoch " +
                                         std::to_string(epoch));
                }
                batch_grad.add_scaled(sg.grad, 1.0 / static_cast<double>(count));
            }
            auto params = m.flatten_parameters();
            const auto flat_grad = batch_grad.flatten();
            adam_step(result.adam, params, flat_grad, config);
            m.assign_parameters(params);
        }

        result.log.push_back(make_log(epoch, m, dataset, config, options));
        if (options.on_epoch) {
            options.on_epoch(result.log.back(), m, result.adam);
        }
    }
    return result;
}

} // namespace anovqc
