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

#include <bit>
#include <cstring>
#include <fstream>
#include <string>

#include "anovqc/data.hpp"
#include "anovqc/errors.hpp"

namespace anovqc {

namespace {

constexpr char kMagic[8] = {'A', 'N', 'O', 'V', 'Q', 'C', 'D', 'S'};

class Writer {
  public:
    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) {
            buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
        }
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
        }
    }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void raw(const char *data, std::size_t n) { buf_.insert(buf_.end(), data, data + n); }
    [[nodiscard]] const std::vector<std::uint8_t> &bytes() const { return buf_; }

  private:
    std::vector<std::uint8_t> buf_;
};

class Reader {
  public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_{bytes} {}

    std::uint64_t le(std::size_t width, const char *what) {
        if (pos_ + width > bytes_.size()) {
            throw FormatError("dataset offset " + std::to_string(pos_) + ": truncated while reading " +
                              what);
        }
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < width; ++i) {
            v |= std::uint64_t{bytes_[pos_ + i]} << (8 * i);
        }
        pos_ += width;
        return v;
    }
    std::uint32_t u32(const char *what) { return static_cast<std::uint32_t>(le(4, what)); }
    std::uint64_t u64(const char *what) { return le(8, what); }
    std::uint8_t u8(const char *what) { return static_cast<std::uint8_t>(le(1, what)); }
    double f64(const char *what) { return std::bit_cast<double>(le(8, what)); }
    [[nodiscard]] std::size_t pos() const { return pos_; }
    [[nodiscard]] bool done() const { return pos_ == bytes_.size(); }

  private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_{0};
};

GrayImage read_image(Reader &rd, std::size_t h, std::size_t w) {
    std::vector<double> px(h * w);
    const std::size_t at = rd.pos();
    for (auto &p : px) {
        p = rd.f64("pixel");
    }
    try {
        return GrayImage(h, w, std::move(px));
    } catch (const InputError &e) {
        throw FormatError("dataset offset " + std::to_string(at) + ": " + e.what());
    }
}

} // namespace

void write_dataset(const std::filesystem::path &path, const SrDataset &dataset) {
    if (dataset.samples.empty()) {
        throw ConfigError("empty dataset");
    }
    const auto &first = dataset.samples.front();
    Writer w;
    w.raw(kMagic, sizeof kMagic);
    w.u32(kDatasetFormatVersion);
    w.u32(static_cast<std::uint32_t>(dataset.scale));
    w.u32(static_cast<std::uint32_t>(first.lr.height()));
    w.u32(static_cast<std::uint32_t>(first.lr.width()));
    w.u32(static_cast<std::uint32_t>(first.hr.height()));
    w.u32(static_cast<std::uint32_t>(first.hr.width()));
    w.u64(dataset.samples.size());
    for (const auto &s : dataset.samples) {
        if (s.lr.height() != first.lr.height() || s.lr.width() != first.lr.width() ||
            s.hr.height() != first.hr.height() || s.hr.width() != first.hr.width()) {
            throw ConfigError("dataset samples have inconsistent dimensions");
        }
        w.u64(s.source_index);
        w.u8(s.label);
        for (const double p : s.lr.pixels()) {
            w.f64(p);
        }
        for (const double p : s.hr.pixels()) {
            w.f64(p);
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ConfigError("cannot write " + path.string());
    }
    out.write(reinterpret_cast<const char *>(w.bytes().data()),
              static_cast<std::streamsize>(w.bytes().size()));
    if (!out) {
        throw ConfigError("failed writing " + path.string());
    }
}

SrDataset read_dataset(const std::filesystem::path &path) {
    const auto bytes = read_file_bytes(path);
    if (bytes.size() < sizeof kMagic || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
        throw FormatError(path.string() + ": offset 0: missing ANOVQCDS dataset magic");
    }
    try {
        Reader rd(std::span<const std::uint8_t>(bytes).subspan(sizeof kMagic));
        const auto version = rd.u32("version");
        if (version != kDatasetFormatVersion) {
            throw FormatError("unsupported dataset version " + std::to_string(version));
        }
        SrDataset ds;
        ds.scale = rd.u32("scale");
        const std::size_t lr_h = rd.u32("lr height");
        const std::size_t lr_w = rd.u32("lr width");
        const std::size_t hr_h = rd.u32("hr height");
        const std::size_t hr_w = rd.u32("hr width");
        const std::uint64_t count = rd.u64("sample count");
        if (count == 0) {
            throw FormatError("dataset holds no samples");
        }
        if (ds.scale < 1 || ds.scale > 1024 || hr_h != kLrSide * ds.scale || hr_w != kLrSide * ds.scale) {
            throw FormatError("HR size " + std::to_string(hr_h) + "x" + std::to_string(hr_w) +
                              " inconsistent with scale " + std::to_string(ds.scale));
        }
        if (lr_h == 0 || lr_w == 0 || lr_h > 4096 || lr_w > 4096) {
            throw FormatError("implausible LR size " + std::to_string(lr_h) + "x" +
                              std::to_string(lr_w));
        }
        const std::size_t per_sample = 9 + 8 * (lr_h * lr_w + hr_h * hr_w);
        if (count > bytes.size() / per_sample + 1) {
            throw FormatError("sample count " + std::to_string(count) + " exceeds file size");
        }
        ds.samples.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) {
            SrSample s;
            s.source_index = rd.u64("source index");
            s.label = rd.u8("label");
            s.lr = read_image(rd, lr_h, lr_w);
            s.hr = read_image(rd, hr_h, hr_w);
            ds.samples.push_back(std::move(s));
        }
        if (!rd.done()) {
            throw FormatError("trailing bytes after last sample");
        }
        return ds;
    } catch (const FormatError &e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

} // namespace anovqc
