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

#include "anovqc/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include <zlib.h>

#include "anovqc/errors.hpp"

namespace anovqc {

GrayImage::GrayImage(std::size_t height, std::size_t width, std::vector<double> pixels)
    : height_{height}, width_{width}, pixels_{std::move(pixels)} {
    if (height_ == 0 || width_ == 0 || pixels_.size() != height_ * width_) {
        throw InputError("image of " + std::to_string(height_) + "x" + std::to_string(width_) +
                         " cannot hold " + std::to_string(pixels_.size()) + " pixels");
    }
    for (const double p : pixels_) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw InputError("pixel value outside [0, 1]");
        }
    }
}

GrayImage GrayImage::filled(std::size_t height, std::size_t width, double value) {
    return GrayImage(height, width, std::vector<double>(height * width, value));
}

double GrayImage::mean() const {
    return std::accumulate(pixels_.begin(), pixels_.end(), 0.0) /
           static_cast<double>(pixels_.size());
}

namespace {

std::string hex32(std::uint32_t v) {
    std::ostringstream os;
    os << "0x" << std::hex;
    os.width(8);
    os.fill('0');
    os << v;
    return os.str();
}

std::uint32_t read_be32(std::span<const std::uint8_t> bytes, std::size_t offset,
                        const char *what) {
    if (offset + 4 > bytes.size()) {
        throw FormatError("offset " + std::to_string(offset) + ": truncated header while reading " +
                          what);
    }
    return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
           (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

void check_magic(std::span<const std::uint8_t> bytes, std::uint32_t expected) {
    if (bytes.empty()) {
        throw FormatError("offset 0: empty input, expected IDX magic " + hex32(expected));
    }
    const std::uint32_t magic = read_be32(bytes, 0, "magic number");
    if (magic != expected) {
        throw FormatError("offset 0: expected IDX magic " + hex32(expected) + ", found " +
                          hex32(magic));
    }
}

void check_payload(std::span<const std::uint8_t> bytes, std::size_t header, std::size_t payload) {
    const std::size_t expected = header + payload;
    if (bytes.size() < expected) {
        throw FormatError("offset " + std::to_string(bytes.size()) + ": truncated payload, expected " +
                          std::to_string(expected) + " bytes in total");
    }
    if (bytes.size() > expected) {
        throw FormatError("offset " + std::to_string(expected) + ": " +
                          std::to_string(bytes.size() - expected) + " trailing bytes after payload");
    }
}

std::vector<std::uint8_t> gunzip(const std::vector<std::uint8_t> &compressed,
                                 const std::filesystem::path &path) {
    z_stream zs{};
    if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK) {
        throw FormatError("cannot initialise gzip decoder");
    }
    std::vector<std::uint8_t> out;
    std::vector<std::uint8_t> chunk(1 << 16);
    zs.next_in = const_cast<Bytef *>(compressed.data());
    zs.avail_in = static_cast<uInt>(compressed.size());
    int rc = Z_OK;
    while (rc != Z_STREAM_END) {
        zs.next_out = chunk.data();
        zs.avail_out = static_cast<uInt>(chunk.size());
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            const auto offset = zs.total_in;
            inflateEnd(&zs);
            throw FormatError(path.string() + ": corrupt gzip stream near compressed offset " +
                              std::to_string(offset));
        }
        out.insert(out.end(), chunk.begin(),
                   chunk.begin() + static_cast<std::ptrdiff_t>(chunk.size() - zs.avail_out));
        if (rc == Z_OK && zs.avail_in == 0 && zs.avail_out != 0) {
            inflateEnd(&zs);
            throw FormatError(path.string() + ": truncated gzip stream");
        }
    }
    inflateEnd(&zs);
    return out;
}

} // namespace

std::vector<RawImage> parse_idx_images(std::span<const std::uint8_t> bytes) {
    check_magic(bytes, kIdxImageMagic);
    const std::size_t count = read_be32(bytes, 4, "image count");
    const std::size_t rows = read_be32(bytes, 8, "row count");
    const std::size_t cols = read_be32(bytes, 12, "column count");
    constexpr std::size_t header = 16;
    if (count > 0 && (rows == 0 || cols == 0)) {
        throw FormatError("offset 8: image dimensions " + std::to_string(rows) + "x" +
                          std::to_string(cols) + " are empty");
    }
    // rows, cols < 2^32, so per_image fits; guard the product with count.
    const std::size_t per_image = rows * cols;
    if (per_image != 0 && count > (bytes.size() - header) / per_image + 1) {
        throw FormatError("offset " + std::to_string(bytes.size()) +
                          ": truncated payload, header declares " + std::to_string(count) +
                          " images of " + std::to_string(rows) + "x" + std::to_string(cols));
    }
    check_payload(bytes, header, count * per_image);

    std::vector<RawImage> images;
    images.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto first = bytes.begin() + static_cast<std::ptrdiff_t>(header + i * per_image);
        images.push_back(
            RawImage{rows, cols, {first, first + static_cast<std::ptrdiff_t>(per_image)}});
    }
    return images;
}

std::vector<std::uint8_t> parse_idx_labels(std::span<const std::uint8_t> bytes) {
    check_magic(bytes, kIdxLabelMagic);
    const std::size_t count = read_be32(bytes, 4, "label count");
    constexpr std::size_t header = 8;
    check_payload(bytes, header, count);
    std::vector<std::uint8_t> labels(bytes.begin() + header, bytes.end());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] > 9) {
            throw FormatError("offset " + std::to_string(header + i) + ": label " +
                              std::to_string(labels[i]) + " is not a digit");
        }
    }
    return labels;
}

GrayImage normalize(const RawImage &raw) {
    std::vector<double> px(raw.bytes.size());
    std::transform(raw.bytes.begin(), raw.bytes.end(), px.begin(),
                   [](std::uint8_t b) { return static_cast<double>(b) / 255.0; });
    return GrayImage(raw.rows, raw.cols, std::move(px));
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open " + path.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (bytes.size() >= 2 && bytes[0] == 0x1f && bytes[1] == 0x8b) {
        return gunzip(bytes, path);
    }
    return bytes;
}

std::vector<GrayImage> load_idx_images(const std::filesystem::path &path) {
    const auto bytes = read_file_bytes(path);
    std::vector<RawImage> raw;
    try {
        raw = parse_idx_images(bytes);
    } catch (const FormatError &e) {
        throw FormatError(path.string() + ": " + e.what());
    }
    std::vector<GrayImage> images;
    images.reserve(raw.size());
    for (const auto &r : raw) {
        images.push_back(normalize(r));
    }
    return images;
}

std::vector<std::uint8_t> load_idx_labels(const std::filesystem::path &path) {
    const auto bytes = read_file_bytes(path);
    try {
        return parse_idx_labels(bytes);
    } catch (const FormatError &e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

namespace {

// weights[o * in + i]: share of input cell i in output cell o. Boundaries are
// handled in integer units of 1/(in*out) so integer ratios are exact.
std::vector<double> area_weights(std::size_t in, std::size_t out) {
    std::vector<double> w(out * in, 0.0);
    for (std::size_t o = 0; o < out; ++o) {
        const std::size_t lo = o * in;
        const std::size_t hi = (o + 1) * in;
        for (std::size_t i = 0; i < in; ++i) {
            const std::size_t a = std::max(lo, i * out);
            const std::size_t b = std::min(hi, (i + 1) * out);
            if (b > a) {
                w[o * in + i] = static_cast<double>(b - a) / static_cast<double>(in);
            }
        }
    }
    return w;
}

} // namespace

GrayImage resize_area(const GrayImage &img, std::size_t out_height, std::size_t out_width) {
    if (out_height < 1 || out_width < 1) {
        throw InputError("resize target must be at least 1x1");
    }
    const std::size_t in_h = img.height();
    const std::size_t in_w = img.width();
    const auto wr = area_weights(in_h, out_height);
    const auto wc = area_weights(in_w, out_width);

    // Rows first: tmp is out_height x in_w.
    std::vector<double> tmp(out_height * in_w, 0.0);
    for (std::size_t o = 0; o < out_height; ++o) {
        for (std::size_t r = 0; r < in_h; ++r) {
            const double w = wr[o * in_h + r];
            if (w == 0.0) {
                continue;
            }
            for (std::size_t c = 0; c < in_w; ++c) {
                tmp[o * in_w + c] += w * img.at(r, c);
            }
        }
    }
    std::vector<double> out(out_height * out_width, 0.0);
    for (std::size_t o = 0; o < out_height; ++o) {
        for (std::size_t p = 0; p < out_width; ++p) {
            double acc = 0.0;
            for (std::size_t c = 0; c < in_w; ++c) {
                acc += wc[p * in_w + c] * tmp[o * in_w + c];
            }
            out[o * out_width + p] = std::clamp(acc, 0.0, 1.0);
        }
    }
    return GrayImage(out_height, out_width, std::move(out));
}

SrSample make_sr_sample(const GrayImage &original, std::size_t scale, std::size_t source_index,
                        std::uint8_t label) {
    const std::size_t hr_side = kLrSide * scale;
    return SrSample{resize_area(original, kLrSide, kLrSide),
                    resize_area(original, hr_side, hr_side), source_index, label};
}

std::vector<SrSample> build_sr_dataset(std::span<const GrayImage> images,
                                       std::span<const std::uint8_t> labels, std::size_t scale,
                                       std::optional<std::size_t> limit, std::uint64_t seed) {
    if (scale < 3 || scale > 5) {
        throw ConfigError("scale must be 3, 4 or 5, got " + std::to_string(scale));
    }
    if (labels.size() != images.size()) {
        throw ConfigError("image count " + std::to_string(images.size()) +
                          " differs from label count " + std::to_string(labels.size()));
    }
    if (images.empty() || (limit && *limit == 0)) {
        throw ConfigError("empty dataset");
    }
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (images[i].height() != kMnistSide || images[i].width() != kMnistSide) {
            throw ConfigError("image " + std::to_string(i) + " is " +
                              std::to_string(images[i].height()) + "x" +
                              std::to_string(images[i].width()) + ", expected 28x28");
        }
    }

    std::vector<std::size_t> indices(images.size());
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    if (limit && *limit < images.size()) {
        std::mt19937_64 rng(seed);
        std::shuffle(indices.begin(), indices.end(), rng);
        indices.resize(*limit);
        std::sort(indices.begin(), indices.end());
    }

    std::vector<SrSample> samples;
    samples.reserve(indices.size());
    for (const std::size_t i : indices) {
        samples.push_back(make_sr_sample(images[i], scale, i, labels[i]));
    }
    return samples;
}

} // namespace anovqc
