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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "anovqc/errors.hpp"
#include "testing.hpp"

namespace anovqc {
namespace {

using testing::Rng;

// Tiny task: 2x2 LR (4 qubits) to 3x3 HR, so fits run in milliseconds.
std::vector<SrSample> tiny_dataset(std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<SrSample> out;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(SrSample{testing::random_image(2, 2, rng), testing::random_image(3, 3, rng),
                               i, static_cast<std::uint8_t>(i % 10)});
    }
    return out;
}

ModelConfig tiny_config() {
    ModelConfig c;
    c.n_qubits = 4;
    c.layers = 2;
    c.k_local = 2;
    c.hr_height = 3;
    c.hr_width = 3;
    return c;
}

TrainConfig tiny_train(std::size_t epochs) {
    TrainConfig t;
    t.epochs = epochs;
    t.batch_size = 3;
    t.rng_seed = 42;
    t.learning_rate = 0.05;
    return t;
}

TEST(CombinedLoss, IdenticalIsZero) {
    Rng rng(1);
    const auto target = testing::random_image(4, 4, rng);
    const auto pred = std::vector<double>(target.pixels().begin(), target.pixels().end());
    const auto r = combined_loss(pred, target, 1.0, 0.5);
    EXPECT_EQ(r.loss, 0.0);
    for (const double g : r.d_pred) {
        EXPECT_EQ(g, 0.0);
    }
}

TEST(CombinedLoss, ConstantOffset) {
    const auto target = GrayImage::filled(3, 3, 0.25);
    const std::vector<double> pred(9, 0.25 + 0.1);
    EXPECT_NEAR(combined_loss(pred, target, 2.0, 0.0).loss, 2.0 * 0.01, 1e-15);
}

TEST(CombinedLoss, GradientMatchesFiniteDifference) {
    Rng rng(2);
    const auto target = testing::random_image(5, 6, rng);
    auto pred = testing::random_vector(30, rng, -0.2, 1.2);
    const auto r = combined_loss(pred, target, 1.0, 0.5);
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double h = 1e-6;
        const double v = pred[i];
        pred[i] = v + h;
        const double up = combined_loss(pred, target, 1.0, 0.5).loss;
        pred[i] = v - h;
        const double down = combined_loss(pred, target, 1.0, 0.5).loss;
        pred[i] = v;
        const double fd = (up - down) / (2 * h);
        EXPECT_LE(std::abs(r.d_pred[i] - fd), 1e-6 * std::max(1.0, std::abs(fd))) << i;
    }
}

TEST(CombinedLoss, LengthMismatch) {
    EXPECT_THROW((void)combined_loss(std::vector<double>(3), GrayImage::filled(2, 2, 0.0), 1, 0),
                 InputError);
}

TEST(Adam, ZeroGradientLeavesParameters) {
    TrainConfig cfg;
    auto st = AdamState::zeros(3);
    std::vector<double> p{1.0, -2.0, 0.5};
    const auto before = p;
    adam_step(st, p, std::vector<double>(3, 0.0), cfg);
    EXPECT_EQ(p, before);
    EXPECT_EQ(st.step, 1u);
}

TEST(Adam, FirstStepMovesByLearningRate) {
    TrainConfig cfg;
    cfg.learning_rate = 0.01;
    auto st = AdamState::zeros(4);
    std::vector<double> p(4, 0.0);
    const std::vector<double> g{3.0, -0.5, 1e-3, -200.0};
    adam_step(st, p, g, cfg);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(std::abs(p[i]), 0.01, 1e-7);
        EXPECT_EQ(std::signbit(p[i]), !std::signbit(g[i]));
    }
}

TEST(Adam, MinimizesQuadratic) {
    TrainConfig cfg;
    cfg.learning_rate = 0.01;
    auto st = AdamState::zeros(1);
    std::vector<double> w{1.0};
    for (int i = 0; i < 1000; ++i) {
        const std::vector<double> g{2.0 * w[0]};
        adam_step(st, w, g, cfg);
    }
    EXPECT_LT(std::abs(w[0]), 1e-3);
}

TEST(Adam, ShapeMismatchThrows) {
    TrainConfig cfg;
    auto st = AdamState::zeros(2);
    std::vector<double> p(3);
    EXPECT_THROW(adam_step(st, p, std::vector<double>(3), cfg), Error);
}

TEST(TrainConfig, Validation) {
    TrainConfig t;
    EXPECT_NO_THROW(t.validate());
    t.c1 = 0.0;
    t.c2 = 0.0;
    EXPECT_THROW(t.validate(), ConfigError);
    t = {};
    t.learning_rate = 0.0;
    EXPECT_THROW(t.validate(), ConfigError);
    t = {};
    t.c2 = -1.0;
    EXPECT_THROW(t.validate(), ConfigError);
    t = {};
    t.batch_size = 0;
    EXPECT_THROW(t.validate(), ConfigError);
}

TEST(InitModel, SeededAndInRange) {
    auto t = tiny_train(1);
    const auto a = init_model(tiny_config(), t);
    const auto b = init_model(tiny_config(), t);
    EXPECT_EQ(a.flatten_parameters(), b.flatten_parameters());
    for (const double v : a.theta) {
        EXPECT_LE(std::abs(v), std::numbers::pi);
    }
    t.rng_seed = 43;
    EXPECT_NE(init_model(tiny_config(), t).flatten_parameters(), a.flatten_parameters());
}

TEST(Fit, ZeroEpochsKeepsInitialization) {
    const auto data = tiny_dataset(4, 1);
    const auto t = tiny_train(0);
    const auto init = init_model(tiny_config(), t);
    const auto r = fit(init, data, t);
    EXPECT_EQ(r.model.flatten_parameters(), init.flatten_parameters());
    ASSERT_EQ(r.log.size(), 1u);
    EXPECT_EQ(r.log[0].epoch, 0u);
}

TEST(Fit, DeterministicUnderSeed) {
    const auto data = tiny_dataset(7, 2);
    const auto t = tiny_train(3);
    const auto a = fit(init_model(tiny_config(), t), data, t);
    const auto b = fit(init_model(tiny_config(), t), data, t);
    EXPECT_EQ(a.model.flatten_parameters(), b.model.flatten_parameters());
    ASSERT_EQ(a.log.size(), b.log.size());
    for (std::size_t i = 0; i < a.log.size(); ++i) {
        EXPECT_EQ(a.log[i].train_loss, b.log[i].train_loss);
    }
}

TEST(Fit, ThreadCountDoesNotChangeResult) {
    const auto data = tiny_dataset(9, 3);
    auto t = tiny_train(2);
    t.num_threads = 1;
    const auto a = fit(init_model(tiny_config(), t), data, t);
    t.num_threads = 4;
    const auto b = fit(init_model(tiny_config(), t), data, t);
    EXPECT_EQ(a.model.flatten_parameters(), b.model.flatten_parameters());
}

TEST(Fit, ResumeMatchesUninterruptedRun) {
    const auto data = tiny_dataset(8, 4);
    const auto full_cfg = tiny_train(4);
    const auto full = fit(init_model(tiny_config(), full_cfg), data, full_cfg);

    auto half_cfg = full_cfg;
    half_cfg.epochs = 2;
    const auto half = fit(init_model(tiny_config(), half_cfg), data, half_cfg);
    FitOptions resume;
    resume.start_epoch = 2;
    resume.adam = half.adam;
    const auto rest = fit(half.model, data, full_cfg, resume);

    EXPECT_EQ(rest.model.flatten_parameters(), full.model.flatten_parameters());
    ASSERT_EQ(rest.log.size(), 2u);
    EXPECT_EQ(rest.log[0].epoch, 3u);
    EXPECT_EQ(rest.log[1].train_loss, full.log[4].train_loss);
}

TEST(Fit, DimensionMismatchIsConfigError) {
    auto data = tiny_dataset(2, 5);
    data[1].hr = GrayImage::filled(4, 4, 0.0);
    const auto t = tiny_train(1);
    EXPECT_THROW((void)fit(init_model(tiny_config(), t), data, t), ConfigError);
    EXPECT_THROW((void)fit(init_model(tiny_config(), t), std::vector<SrSample>{}, t), ConfigError);
}

TEST(Fit, ValidationMetricsAndCallback) {
    const auto data = tiny_dataset(6, 6);
    const auto val = tiny_dataset(3, 7);
    const auto t = tiny_train(2);
    FitOptions opts;
    opts.validation = val;
    std::size_t calls = 0;
    opts.on_epoch = [&](const EpochLog &log, const AnoVqcModel &, const AdamState &) {
        EXPECT_EQ(log.epoch, calls);
        ++calls;
    };
    // 3x3 HR is below the SSIM window; use 7x7 targets for this test.
    std::vector<SrSample> big_data = data;
    std::vector<SrSample> big_val = val;
    Rng rng(8);
    for (auto &s : big_data) {
        s.hr = testing::random_image(7, 7, rng);
    }
    for (auto &s : big_val) {
        s.hr = testing::random_image(7, 7, rng);
    }
    opts.validation = big_val;
    auto cfg = tiny_config();
    cfg.hr_height = cfg.hr_width = 7;
    const auto r = fit(init_model(cfg, t), big_data, t, opts);
    EXPECT_EQ(calls, 3u);
    ASSERT_TRUE(r.log.back().validation.has_value());
    EXPECT_NEAR(r.log.back().validation->mse, evaluate_dataset(r.model, big_val, 1).mse, 1e-12);
}

TEST(Fit, TrainLossIsFullDatasetLoss) {
    const auto data = tiny_dataset(5, 9);
    const auto t = tiny_train(2);
    const auto r = fit(init_model(tiny_config(), t), data, t);
    EXPECT_EQ(r.log.back().train_loss, dataset_loss(r.model, data, 1.0, 0.0, 1));
}

TEST(Fit, OverfitsSingleTinySample) {
    const auto data = tiny_dataset(1, 10);
    auto t = tiny_train(150);
    t.learning_rate = 0.05;
    const auto r = fit(init_model(tiny_config(), t), data, t);
    EXPECT_LT(r.log.back().train_loss, 0.1 * r.log.front().train_loss);
}

TEST(Baseline, MeanImageMse) {
    std::vector<SrSample> fit_on{
        SrSample{GrayImage::filled(2, 2, 0), GrayImage::filled(1, 2, 0.0), 0, 0},
        SrSample{GrayImage::filled(2, 2, 0), GrayImage::filled(1, 2, 1.0), 1, 0}};
    EXPECT_NEAR(mean_image_baseline_mse(fit_on, fit_on), 0.25, 1e-15);
}

TEST(EpochCsv, RowFormat) {
    EpochLog log{3, 0.125, std::nullopt};
    EXPECT_EQ(epoch_csv_row(log), "3,0.125000,nan,nan,nan");
    log.validation = MetricReport{0.01, 20.0, 0.5, 0.0};
    EXPECT_EQ(epoch_csv_row(log), "3,0.125000,0.010000,20.000000,0.500000");
    EXPECT_STREQ(kEpochCsvHeader, "epoch,train_loss,val_mse,val_psnr,val_ssim");
}

} // namespace
} // namespace anovqc
