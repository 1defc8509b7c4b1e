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

// Bit-twiddling helpers for strided amplitude access. Internal header.
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace anovqc::detail {

/// Spreads the bits of r over the positions not listed in `sorted_wires`
/// (ascending), leaving those positions zero.
[[nodiscard]] inline std::size_t insert_zero_bits(std::size_t r,
                                                  std::span<const std::size_t> sorted_wires) {
    for (const std::size_t w : sorted_wires) {
        const std::size_t low = r & ((std::size_t{1} << w) - 1);
        r = ((r >> w) << (w + 1)) | low;
    }
    return r;
}

[[nodiscard]] inline std::vector<std::size_t> sorted_wires(std::span<const std::size_t> wires) {
    std::vector<std::size_t> out(wires.begin(), wires.end());
    std::sort(out.begin(), out.end());
    return out;
}

/// offsets[a] places local bit j of a onto wire wires[j].
[[nodiscard]] inline std::vector<std::size_t> local_offsets(std::span<const std::size_t> wires) {
    const std::size_t dim = std::size_t{1} << wires.size();
    std::vector<std::size_t> offsets(dim, 0);
    for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t j = 0; j < wires.size(); ++j) {
            if ((a >> j) & 1U) {
                offsets[a] |= std::size_t{1} << wires[j];
            }
        }
    }
    return offsets;
}

} // namespace anovqc::detail
