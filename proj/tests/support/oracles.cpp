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

#include "oracles.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace anovqc::oracle {

Dense identity(std::size_t dim) {
    Dense m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Dense multiply(const Dense &x, const Dense &y) {
    Dense out(x.dim);
    for (std::size_t i = 0; i < x.dim; ++i) {
        for (std::size_t k = 0; k < x.dim; ++k) {
            const Cx xik = x(i, k);
            if (xik == Cx{}) {
                continue;
            }
            for (std::size_t j = 0; j < x.dim; ++j) {
                out(i, j) += xik * y(k, j);
            }
        }
    }
    return out;
}

Dense adjoint(const Dense &x) {
    Dense out(x.dim);
    for (std::size_t i = 0; i < x.dim; ++i) {
        for (std::size_t j = 0; j < x.dim; ++j) {
            out(j, i) = std::conj(x(i, j));
        }
    }
    return out;
}

std::vector<Cx> apply(const Dense &m, std::span<const Cx> v) {
    std::vector<Cx> out(m.dim);
    for (std::size_t i = 0; i < m.dim; ++i) {
        for (std::size_t j = 0; j < m.dim; ++j) {
            out[i] += m(i, j) * v[j];
        }
    }
    return out;
}

Dense hadamard() {
    const double r = 1.0 / std::sqrt(2.0);
    Dense m(2);
    m(0, 0) = r;
    m(0, 1) = r;
    m(1, 0) = r;
    m(1, 1) = -r;
    return m;
}

Dense rotation(char axis, double angle) {
    // exp(-i angle sigma / 2) = cos(angle/2) I - i sin(angle/2) sigma
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    const Cx i{0.0, 1.0};
    Dense sigma(2);
    switch (axis) {
    case 'X':
        sigma(0, 1) = 1.0;
        sigma(1, 0) = 1.0;
        break;
    case 'Y':
        sigma(0, 1) = -i;
        sigma(1, 0) = i;
        break;
    case 'Z':
        sigma(0, 0) = 1.0;
        sigma(1, 1) = -1.0;
        break;
    default:
        throw std::invalid_argument("axis");
    }
    Dense m(2);
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t col = 0; col < 2; ++col) {
            m(r, col) = (r == col ? c : 0.0) - i * s * sigma(r, col);
        }
    }
    return m;
}

Dense cnot_local() {
    // |c t> with index c + 2t; flips t when c = 1: swaps 1 <-> 3.
    Dense m(4);
    m(0, 0) = 1.0;
    m(2, 2) = 1.0;
    m(1, 3) = 1.0;
    m(3, 1) = 1.0;
    return m;
}

Dense embed(const Dense &local, std::span<const std::size_t> wires, std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    std::size_t mask = 0;
    for (const auto w : wires) {
        mask |= std::size_t{1} << w;
    }
    auto local_index = [&](std::size_t full) {
        std::size_t a = 0;
        for (std::size_t j = 0; j < wires.size(); ++j) {
            a |= ((full >> wires[j]) & 1U) << j;
        }
        return a;
    };
    Dense out(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            if ((i & ~mask) == (j & ~mask)) {
                out(i, j) = local(local_index(i), local_index(j));
            }
        }
    }
    return out;
}

Dense hermitian(std::size_t k, std::span<const double> packed) {
    const std::size_t dim = std::size_t{1} << k;
    const std::size_t off = dim * (dim - 1) / 2;
    Dense m(dim);
    std::size_t p = 0;
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = packed[i];
    }
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i + 1; j < dim; ++j, ++p) {
            const double a = packed[dim + p];
            const double b = packed[dim + off + p];
            m(i, j) = Cx{a, b};
            m(j, i) = Cx{a, -b};
        }
    }
    return m;
}

Cx full_expectation(std::span<const Cx> psi, const Dense &local,
                    std::span<const std::size_t> wires, std::size_t n) {
    const auto full = embed(local, wires, n);
    const auto hpsi = oracle::apply(full, psi);
    Cx acc{};
    for (std::size_t i = 0; i < psi.size(); ++i) {
        acc += std::conj(psi[i]) * hpsi[i];
    }
    return acc;
}

Dense brute_force_rdm(std::span<const Cx> psi, std::span<const std::size_t> subset,
                      std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t k = subset.size();
    Dense rho(std::size_t{1} << k);
    std::size_t mask = 0;
    for (const auto w : subset) {
        mask |= std::size_t{1} << w;
    }
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            if ((i & ~mask) != (j & ~mask)) {
                continue;
            }
            std::size_t a = 0;
            std::size_t b = 0;
            for (std::size_t t = 0; t < k; ++t) {
                a |= ((i >> subset[t]) & 1U) << t;
                b |= ((j >> subset[t]) & 1U) << t;
            }
            rho(a, b) += psi[i] * std::conj(psi[j]);
        }
    }
    return rho;
}

Dense circuit_unitary(const AnoVqcModel &model, std::span<const double> x) {
    const auto &cfg = model.config;
    const std::size_t n = cfg.n_qubits;
    Dense u = identity(std::size_t{1} << n);
    auto push = [&](const Dense &local, std::vector<std::size_t> wires) {
        u = multiply(embed(local, wires, n), u);
    };
    for (std::size_t q = 0; q < n; ++q) {
        push(hadamard(), {q});
        push(rotation(axis_name(cfg.encoding_axis(q)), cfg.angle_scale * x[q]), {q});
    }
    for (std::size_t l = 0; l < cfg.layers; ++l) {
        for (std::size_t start : {0, 1}) {
            for (std::size_t q = start; q + 1 < n; q += 2) {
                push(cnot_local(), {q, q + 1});
            }
        }
        for (std::size_t q = 0; q < n; ++q) {
            push(rotation('Y', model.theta[q * cfg.layers + l]), {q});
        }
    }
    return u;
}

std::vector<double> dense_forward(const AnoVqcModel &model, std::span<const double> x) {
    const std::size_t n = model.config.n_qubits;
    std::vector<Cx> zero(std::size_t{1} << n);
    zero[0] = 1.0;
    const auto psi = oracle::apply(circuit_unitary(model, x), zero);
    std::vector<double> out;
    for (const auto &head : model.heads) {
        const auto h = hermitian(head.params.locality(), head.params.packed());
        out.push_back(full_expectation(psi, h, head.subset, n).real());
    }
    return out;
}

std::vector<double> resize(const std::vector<double> &img, std::size_t h, std::size_t w,
                           std::size_t oh, std::size_t ow) {
    std::vector<double> out(oh * ow);
    const double sy = static_cast<double>(h) / static_cast<double>(oh);
    const double sx = static_cast<double>(w) / static_cast<double>(ow);
    for (std::size_t i = 0; i < oh; ++i) {
        for (std::size_t j = 0; j < ow; ++j) {
            const double y0 = static_cast<double>(i) * sy;
            const double y1 = static_cast<double>(i + 1) * sy;
            const double x0 = static_cast<double>(j) * sx;
            const double x1 = static_cast<double>(j + 1) * sx;
            double acc = 0.0;
            double area = 0.0;
            for (std::size_t p = 0; p < h; ++p) {
                const double oy = std::min(y1, p + 1.0) - std::max(y0, static_cast<double>(p));
                if (oy <= 0) {
                    continue;
                }
                for (std::size_t q = 0; q < w; ++q) {
                    const double ox =
                        std::min(x1, q + 1.0) - std::max(x0, static_cast<double>(q));
                    if (ox <= 0) {
                        continue;
                    }
                    acc += oy * ox * img[p * w + q];
                    area += oy * ox;
                }
            }
            out[i * ow + j] = acc / area;
        }
    }
    return out;
}

double ssim(const std::vector<double> &a, const std::vector<double> &b, std::size_t h,
            std::size_t w) {
    constexpr int kWin = 7;
    constexpr double kSigma = 1.5;
    double g[kWin][kWin];
    double gsum = 0.0;
    for (int r = 0; r < kWin; ++r) {
        for (int c = 0; c < kWin; ++c) {
            g[r][c] = std::exp(-((r - 3) * (r - 3) + (c - 3) * (c - 3)) / (2 * kSigma * kSigma));
            gsum += g[r][c];
        }
    }
    const double c1 = 0.01 * 0.01;
    const double c2 = 0.03 * 0.03;
    double total = 0.0;
    std::size_t count = 0;
    for (std::size_t r0 = 0; r0 + kWin <= h; ++r0) {
        for (std::size_t c0 = 0; c0 + kWin <= w; ++c0) {
            double ma = 0.0;
            double mb = 0.0;
            for (int r = 0; r < kWin; ++r) {
                for (int c = 0; c < kWin; ++c) {
                    ma += g[r][c] / gsum * a[(r0 + r) * w + c0 + c];
                    mb += g[r][c] / gsum * b[(r0 + r) * w + c0 + c];
                }
            }
            double va = 0.0;
            double vb = 0.0;
            double cov = 0.0;
            for (int r = 0; r < kWin; ++r) {
                for (int c = 0; c < kWin; ++c) {
                    const double wt = g[r][c] / gsum;
                    const double da = a[(r0 + r) * w + c0 + c] - ma;
                    const double db = b[(r0 + r) * w + c0 + c] - mb;
                    va += wt * da * da;
                    vb += wt * db * db;
                    cov += wt * da * db;
                }
            }
            total += (2 * ma * mb + c1) * (2 * cov + c2) /
                     ((ma * ma + mb * mb + c1) * (va + vb + c2));
            ++count;
        }
    }
    return total / static_cast<double>(count);
}

double sobel_proxy(const std::vector<double> &a, const std::vector<double> &b, std::size_t h,
                   std::size_t w) {
    auto px = [&](const std::vector<double> &img, long r, long c) {
        r = std::clamp(r, 0L, static_cast<long>(h) - 1);
        c = std::clamp(c, 0L, static_cast<long>(w) - 1);
        return img[static_cast<std::size_t>(r) * w + static_cast<std::size_t>(c)];
    };
    auto mag = [&](const std::vector<double> &img, long r, long c) {
        const double gx = (px(img, r - 1, c + 1) + 2 * px(img, r, c + 1) + px(img, r + 1, c + 1)) -
                          (px(img, r - 1, c - 1) + 2 * px(img, r, c - 1) + px(img, r + 1, c - 1));
        const double gy = (px(img, r + 1, c - 1) + 2 * px(img, r + 1, c) + px(img, r + 1, c + 1)) -
                          (px(img, r - 1, c - 1) + 2 * px(img, r - 1, c) + px(img, r - 1, c + 1));
        return std::sqrt(gx * gx + gy * gy);
    };
    double acc = 0.0;
    for (long r = 0; r < static_cast<long>(h); ++r) {
        for (long c = 0; c < static_cast<long>(w); ++c) {
            const double d = mag(a, r, c) - mag(b, r, c);
            acc += d * d;
        }
    }
    return acc / static_cast<double>(h * w);
}

namespace {

Eigen::MatrixXcd to_eigen(const Dense &m) {
    Eigen::MatrixXcd e(static_cast<Eigen::Index>(m.dim), static_cast<Eigen::Index>(m.dim));
    for (std::size_t i = 0; i < m.dim; ++i) {
        for (std::size_t j = 0; j < m.dim; ++j) {
            e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
        }
    }
    return e;
}

} // namespace

std::vector<double> eigenvalues(const Dense &m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m));
    const auto &ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

double max_eigen_imag(const Dense &m) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m));
    double worst = 0.0;
    for (const auto &ev : solver.eigenvalues()) {
        worst = std::max(worst, std::abs(ev.imag()));
    }
    return worst;
}

} // namespace anovqc::oracle
