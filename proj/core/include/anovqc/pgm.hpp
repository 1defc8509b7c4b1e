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
 * @file pgm.hpp
 * Binary PGM (P5, maxval 255) output.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "anovqc/data.hpp"

namespace anovqc {

/// round(clamp(v, 0, 1) * 255), halves rounded away from zero.
[[nodiscard]] std::uint8_t quantize_pixel(double v);

/// "P5\n<width> <height>\n255\n" followed by one byte per pixel, row-major.
[[nodiscard]] std::vector<std::uint8_t> encode_pgm(const ImageView &img);

void write_pgm(const std::filesystem::path &path, const ImageView &img);

} // namespace anovqc
