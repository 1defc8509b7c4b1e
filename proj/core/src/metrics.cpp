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

#include "anovqc/metrics.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

#include "anovqc/errors.hpp"

namespace anovqc {

namespace {

void check_same_shape(const ImageView &a, const ImageView &b) {
    if (a.height != b.height || a.width != b.width || a.pixels.size() != b.pixels.size() ||
        a.pixels.size() != a.height * a.width) {
        throw InputError("image dimensions differ: " + std::to_string(a.height) + "x" +
                         std::to_string(a.width) + " vs " + std::to_string(b.height) + "x" +
                         std::to_string(b.width));
    }
    if (a.pixels.empty()) {
        throw InputError("empty image");
    }
}

constexpr std::array<std::array<double, 3>, 3> kSobelX{{{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}}};
constexpr std::array<std::array<double, 3>, 3> kSobelY{{{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}}};

std::size_t clamp_index(std::ptrdiff_t i, std::size_t n) {
    if (i < 0) {
        return 0;
    }
    return std::min(static_cast<std::size_t>(i), n - 1);
}

struct SobelField {
    std::vector<double> gx;
    std::vector<double> gy;
    std::vector<double> mag;
};

SobelField sobel(const ImageView &img) {
    const std::size_t h = img.height;
    const std::size_t w = img.width;
    SobelField f{std::vector<double>(h * w), std::vector<double>(h * w),
                 std::vector<double>(h * w)};
    for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < w; ++c) {
            double sx = 0.0;
            double sy = 0.0;
            for (std::ptrdiff_t dr = -1; dr <= 1; ++dr) {
                for (std::ptrdiff_t dc = -1; dc <= 1; ++dc) {
                    const double v = img.at(clamp_index(static_cast<std::ptrdiff_t>(r) + dr, h),
                                            clamp_index(static_cast<std::ptrdiff_t>(c) + dc, w));
                    sx += kSobelX[dr + 1][dc + 1] * v;
                    sy += kSobelY[dr + 1][dc + 1] * v;
                }
            }
            f.gx[r * w + c] = sx;
            f.gy[r * w + c] = sy;
            f.mag[r * w + c] = std::hypot(sx, sy);
        }
    }
    return f;
}

void check_proxy_shape(const ImageView &a, const ImageView &b) {
    check_same_shape(a, b);
    if (a.height < 3 || a.width < 3) {
        throw InputError("perceptual proxy needs images of at least 3x3");
    }
}

} // namespace

double mse(const ImageView &a, const ImageView &b) {
    check_same_shape(a, b);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        const double d = a.pixels[i] - b.pixels[i];
        acc += d * d;
    }
    return acc / static_cast<double>(a.pixels.size());
}

double psnr_from_mse(double mse_value, double max_value) {
    if (mse_value == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 10.0 * std::log10(max_value * max_value / mse_value);
}

double psnr(const ImageView &a, const ImageView &b, double max_value) {
    return psnr_from_mse(mse(a, b), max_value);
}

std::vector<double> ssim_window() {
    std::vector<double> w(kSsimWindow * kSsimWindow);
    const double center = static_cast<double>(kSsimWindow - 1) / 2.0;
    double total = 0.0;
    for (std::size_t r = 0; r < kSsimWindow; ++r) {
        for (std::size_t c = 0; c < kSsimWindow; ++c) {
            const double dr = static_cast<double>(r) - center;
            const double dc = static_cast<double>(c) - center;
            const double v = std::exp(-(dr * dr + dc * dc) / (2.0 * kSsimSigma * kSsimSigma));
            w[r * kSsimWindow + c] = v;
            total += v;
        }
    }
    for (auto &v : w) {
        v /= total;
    }
    return w;
}

double ssim(const ImageView &a, const ImageView &b, double max_value) {
    check_same_shape(a, b);
    if (a.height < kSsimWindow || a.width < kSsimWindow) {
        throw InputError("SSIM needs images of at least 7x7, got " + std::to_string(a.height) +
                         "x" + std::to_string(a.width));
    }
    const double c1 = (0.01 * max_value) * (0.01 * max_value);
    const double c2 = (0.03 * max_value) * (0.03 * max_value);
    const auto window = ssim_window();
    const std::size_t rows = a.height - kSsimWindow + 1;
    const std::size_t cols = a.width - kSsimWindow + 1;

    double total = 0.0;
    for (std::size_t r0 = 0; r0 < rows; ++r0) {
        for (std::size_t c0 = 0; c0 < cols; ++c0) {
            double mu_a = 0.0;
            double mu_b = 0.0;
            double aa = 0.0;
            double bb = 0.0;
            double ab = 0.0;
            for (std::size_t r = 0; r < kSsimWindow; ++r) {
                for (std::size_t c = 0; c < kSsimWindow; ++c) {
                    const double wt = window[r * kSsimWindow + c];
                    const double x = a.at(r0 + r, c0 + c);
                    const double y = b.at(r0 + r, c0 + c);
                    mu_a += wt * x;
                    mu_b += wt * y;
                    aa += wt * x * x;
                    bb += wt * y * y;
                    ab += wt * x * y;
                }
            }
            const double var_a = aa - mu_a * mu_a;
            const double var_b = bb - mu_b * mu_b;
            const double cov = ab - mu_a * mu_b;
            total += ((2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)) /
                     ((mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2));
        }
    }
    return total / static_cast<double>(rows * cols);
}

std::vector<double> sobel_magnitude(const ImageView &img) {
    if (img.height == 0 || img.width == 0 || img.pixels.size() != img.height * img.width) {
        throw InputError("malformed image view");
    }
    return sobel(img).mag;
}

double perceptual_proxy(const ImageView &a, const ImageView &b) {
    check_proxy_shape(a, b);
    const auto ga = sobel(a).mag;
    const auto gb = sobel(b).mag;
    double acc = 0.0;
    for (std::size_t i = 0; i < ga.size(); ++i) {
        const double d = ga[i] - gb[i];
        acc += d * d;
    }
    return acc / static_cast<double>(ga.size());
}

std::vector<double> perceptual_proxy_grad(const ImageView &a, const ImageView &b) {
    check_proxy_shape(a, b);
    const std::size_t h = a.height;
    const std::size_t w = a.width;
    const auto fa = sobel(a);
    const auto gb = sobel(b).mag;
    const double scale = 2.0 / static_cast<double>(h * w);
    std::vector<double> grad(h * w, 0.0);
    for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < w; ++c) {
            const std::size_t i = r * w + c;
            if (fa.mag[i] == 0.0) {
                continue;
            }
            const double coef = scale * (fa.mag[i] - gb[i]) / fa.mag[i];
            const double cx = coef * fa.gx[i];
            const double cy = coef * fa.gy[i];
            for (std::ptrdiff_t dr = -1; dr <= 1; ++dr) {
                for (std::ptrdiff_t dc = -1; dc <= 1; ++dc) {
                    const std::size_t rr = clamp_index(static_cast<std::ptrdiff_t>(r) + dr, h);
                    const std::size_t cc = clamp_index(static_cast<std::ptrdiff_t>(c) + dc, w);
                    grad[rr * w + cc] +=
                        cx * kSobelX[dr + 1][dc + 1] + cy * kSobelY[dr + 1][dc + 1];
                }
            }
        }
    }
    return grad;
}

MetricReport evaluate_pair(const ImageView &prediction, const ImageView &target) {
    MetricReport rep;
    rep.mse = mse(prediction, target);
    rep.psnr = psnr_from_mse(rep.mse);
    rep.ssim = ssim(prediction, target);
    rep.perceptual = perceptual_proxy(prediction, target);
    return rep;
}

MetricReport average(const std::vector<MetricReport> &reports) {
    if (reports.empty()) {
        throw InputError("cannot average zero metric reports");
    }
    MetricReport avg;
    for (const auto &r : reports) {
        avg.mse += r.mse;
        avg.psnr += r.psnr;
        avg.ssim += r.ssim;
        avg.perceptual += r.perceptual;
    }
    const auto n = static_cast<double>(reports.size());
    avg.mse /= n;
    avg.psnr /= n;
    avg.ssim /= n;
    avg.perceptual /= n;
    return avg;
}

std::string format_metric(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

} // namespace anovqc
