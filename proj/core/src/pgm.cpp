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

#include "anovqc/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "anovqc/errors.hpp"

namespace anovqc {

std::uint8_t quantize_pixel(double v) {
    if (std::isnan(v)) {
        throw NumericalError("cannot quantize NaN pixel");
    }
    return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

std::vector<std::uint8_t> encode_pgm(const ImageView &img) {
    if (img.height == 0 || img.width == 0 || img.pixels.size() != img.height * img.width) {
        throw InputError("malformed image view");
    }
    const std::string header =
        "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(header.size() + img.pixels.size());
    for (const double v : img.pixels) {
        out.push_back(quantize_pixel(v));
    }
    return out;
}

void write_pgm(const std::filesystem::path &path, const ImageView &img) {
    const auto bytes = encode_pgm(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ConfigError("cannot write " + path.string());
    }
    out.write(reinterpret_cast<const char *>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

} // namespace anovqc
