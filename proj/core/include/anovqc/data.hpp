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
 * @file data.hpp
 * MNIST IDX parsing, area resampling, and LR/HR super-resolution pairs.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

namespace anovqc {

/// Read-only view over a row-major real image. Values are not range-checked.
struct ImageView {
    std::size_t height{0};
    std::size_t width{0};
    std::span<const double> pixels;

    [[nodiscard]] double at(std::size_t r, std::size_t c) const { return pixels[r * width + c]; }
};

/// Row-major grayscale image with every pixel in [0, 1].
class GrayImage {
  public:
    GrayImage() = default;
    /// Throws InputError on a size mismatch or a pixel outside [0, 1].
    GrayImage(std::size_t height, std::size_t width, std::vector<double> pixels);

    [[nodiscard]] static GrayImage filled(std::size_t height, std::size_t width, double value);

    [[nodiscard]] std::size_t height() const noexcept { return height_; }
    [[nodiscard]] std::size_t width() const noexcept { return width_; }
    [[nodiscard]] std::span<const double> pixels() const noexcept { return pixels_; }
    [[nodiscard]] double at(std::size_t r, std::size_t c) const { return pixels_[r * width_ + c]; }
    [[nodiscard]] ImageView view() const noexcept { return {height_, width_, pixels_}; }
    [[nodiscard]] double mean() const;

    friend bool operator==(const GrayImage &, const GrayImage &) = default;

  private:
    std::size_t height_{0};
    std::size_t width_{0};
    std::vector<double> pixels_;
};

/// Unnormalized 8-bit image as stored in an IDX file.
struct RawImage {
    std::size_t rows{0};
    std::size_t cols{0};
    std::vector<std::uint8_t> bytes;
};

inline constexpr std::uint32_t kIdxImageMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

/// Parses an uncompressed IDX3 image file. Throws FormatError with byte offsets.
[[nodiscard]] std::vector<RawImage> parse_idx_images(std::span<const std::uint8_t> bytes);

/// Parses an uncompressed IDX1 label file; every label must be a digit 0-9.
[[nodiscard]] std::vector<std::uint8_t> parse_idx_labels(std::span<const std::uint8_t> bytes);

/// pixel / 255.
[[nodiscard]] GrayImage normalize(const RawImage &raw);

/// Whole file contents, transparently gunzipped when it starts with 0x1f 0x8b.
[[nodiscard]] std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path &path);

[[nodiscard]] std::vector<GrayImage> load_idx_images(const std::filesystem::path &path);
[[nodiscard]] std::vector<std::uint8_t> load_idx_labels(const std::filesystem::path &path);

/// Box-filter resampling with fractional-overlap weights; preserves the image mean.
[[nodiscard]] GrayImage resize_area(const GrayImage &img, std::size_t out_height,
                                    std::size_t out_width);

inline constexpr std::size_t kLrSide = 4;
inline constexpr std::size_t kMnistSide = 28;

struct SrSample {
    GrayImage lr;
    GrayImage hr;
    std::size_t source_index{0};
    std::uint8_t label{0};

    friend bool operator==(const SrSample &, const SrSample &) = default;
};

/// Both images are area-resized from the original: lr to 4x4, hr to (4 scale)^2.
[[nodiscard]] SrSample make_sr_sample(const GrayImage &original, std::size_t scale,
                                      std::size_t source_index, std::uint8_t label);

/**
 * @brief Builds the LR/HR pairs for one scale factor (3, 4 or 5).
 *
 * With a limit below the image count, a seeded random subset is taken and
 * kept in ascending source order. A limit of zero is an error.
 */
[[nodiscard]] std::vector<SrSample> build_sr_dataset(std::span<const GrayImage> images,
                                                     std::span<const std::uint8_t> labels,
                                                     std::size_t scale,
                                                     std::optional<std::size_t> limit,
                                                     std::uint64_t seed);

struct SrDataset {
    std::size_t scale{0};
    std::vector<SrSample> samples;

    friend bool operator==(const SrDataset &, const SrDataset &) = default;
};

/**
 * @brief Packed little-endian dataset file.
 *
 *   "ANOVQCDS"  u32 version  u32 scale  u32 lr_h  u32 lr_w  u32 hr_h  u32 hr_w  u64 count
 *   count x { u64 source_index  u8 label  f64[lr_h*lr_w]  f64[hr_h*hr_w] }
 */
void write_dataset(const std::filesystem::path &path, const SrDataset &dataset);
[[nodiscard]] SrDataset read_dataset(const std::filesystem::path &path);

inline constexpr std::uint32_t kDatasetFormatVersion = 1;

} // namespace anovqc
