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
 * @file checkpoint.hpp
 * JSON checkpoints holding the model and, optionally, optimizer progress.
 *
 * Layout (format tag "anovqc-checkpoint", version 1):
 *   config  {n_qubits, layers, k_local, hr_height, hr_width, encoding_axes, angle_scale}
 *   theta   row-major n_qubits x layers
 *   heads   [{subset: [...], phi: [K^2 packed]}] in HR pixel order
 *   training (optional) {epoch, rng_seed, adam: {step, m, v}}
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "anovqc/model.hpp"
#include "anovqc/train.hpp"

namespace anovqc {

inline constexpr const char *kCheckpointFormat = "anovqc-checkpoint";
inline constexpr int kCheckpointVersion = 1;

struct TrainingProgress {
    std::size_t epoch{0};
    std::uint64_t rng_seed{0};
    AdamState adam;
};

struct Checkpoint {
    AnoVqcModel model;
    std::optional<TrainingProgress> progress;
};

[[nodiscard]] std::string checkpoint_to_json(const Checkpoint &checkpoint);
/// Throws FormatError on a malformed document, ConfigError on an invalid model.
[[nodiscard]] Checkpoint checkpoint_from_json(const std::string &text);

void save_checkpoint(const std::filesystem::path &path, const Checkpoint &checkpoint);
[[nodiscard]] Checkpoint load_checkpoint(const std::filesystem::path &path);

} // namespace anovqc
