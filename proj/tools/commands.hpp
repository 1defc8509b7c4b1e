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
 * @file commands.hpp
 * Implementation of the anovqc subcommands, callable without the CLI parser.
 *
 * Every command throws anovqc::Error subclasses on failure; the executable
 * maps them to exit codes with exit_code_for().
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "anovqc/metrics.hpp"
#include "anovqc/model.hpp"
#include "anovqc/train.hpp"

namespace anovqc::cli {

struct PrepareArgs {
    std::filesystem::path images;
    std::filesystem::path labels;
    std::size_t scale{3};
    std::optional<std::size_t> limit;
    std::uint64_t seed{0};
    std::filesystem::path out;
};

/// Builds and writes a packed SR dataset. Returns the sample count.
std::size_t cmd_prepare(const PrepareArgs &args, std::ostream &log);

/// Everything `train` needs, parsed from a JSON document.
struct RunConfig {
    std::filesystem::path train_dataset;
    std::optional<std::filesystem::path> val_dataset;
    std::filesystem::path out_dir{"run"};
    std::optional<std::filesystem::path> resume_from;
    std::optional<std::size_t> scale;
    std::size_t checkpoint_every{1};
    ModelConfig model;  // n_qubits and HR size are taken from the dataset
    TrainConfig train;
};

/**
 * @brief Parses a run configuration. Unknown keys are rejected; relative
 * paths resolve against `base_dir`.
 */
[[nodiscard]] RunConfig parse_run_config(const std::string &json_text,
                                         const std::filesystem::path &base_dir);
[[nodiscard]] RunConfig load_run_config(const std::filesystem::path &path);

struct TrainOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> out_dir;
};

struct TrainSummary {
    std::size_t final_epoch{0};
    double initial_loss{0.0};
    double final_loss{0.0};
    std::filesystem::path checkpoint;
    std::filesystem::path metrics_csv;
};

/// Trains per the config, writing <out>/checkpoint.json and <out>/metrics.csv.
TrainSummary cmd_train(const RunConfig &config, const TrainOverrides &overrides,
                       std::ostream &log);

inline constexpr const char *kEvalCsvHeader = "scale,k_local,mse,lpips_proxy,psnr,ssim";

struct EvalResult {
    std::size_t scale{0};
    std::size_t k_local{0};
    MetricReport metrics;

    [[nodiscard]] std::string csv_row() const;
};

/// Mean metrics of a checkpoint over a dataset; prints header and row to `out`.
EvalResult cmd_eval(const std::filesystem::path &checkpoint,
                    const std::filesystem::path &dataset, std::ostream &out,
                    std::size_t num_threads = 0);

/// Writes <i>_lr.pgm, <i>_pred.pgm, <i>_hr.pgm for the first `count` samples.
/// Returns the number of samples written.
std::size_t cmd_infer(const std::filesystem::path &checkpoint,
                      const std::filesystem::path &dataset, const std::filesystem::path &out_dir,
                      std::size_t count, std::ostream &log);

} // namespace anovqc::cli
