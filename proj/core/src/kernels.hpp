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

// Fixed-dimension inner loops for k-local density matrices and operators.
// Internal header.
#pragma once

#include <array>
#include <bit>
#include <complex>
#include <cstddef>
#include <span>

#include "bits.hpp"

namespace anovqc::detail {

/// Calls fn(base) for every index with the wire bits clear, in ascending order.
/// Bases below the lowest wire come in contiguous runs, so the inner loop is
/// a plain stride-1 loop.
template <std::size_t Dim, typename Fn>
void for_each_base(std::size_t outer, std::span<const std::size_t> sorted, Fn &&fn) {
    constexpr std::size_t k = std::bit_width(Dim) - 1;
    std::array<std::size_t, k> w{};
    for (std::size_t j = 0; j < k; ++j) {
        w[j] = sorted[j];
    }
    const std::size_t run = std::size_t{1} << w[0];
    for (std::size_t h = 0; h < outer; h += run) {
        std::size_t base = h;
        for (std::size_t j = 0; j < k; ++j) {
            const std::size_t low = base & ((std::size_t{1} << w[j]) - 1);
            base = ((base >> w[j]) << (w[j] + 1)) | low;
        }
        for (std::size_t i = base; i < base + run; ++i) {
            fn(i);
        }
    }
}

/// Upper triangle of sum_r v_r v_r^dagger, v_r the Dim amplitudes sharing base r.
template <std::size_t Dim>
void accumulate_rdm(const std::complex<double> *amp, std::size_t outer,
                    std::span<const std::size_t> sorted, const std::size_t *offsets,
                    double *acc_re, double *acc_im) {
    std::array<std::size_t, Dim> off{};
    for (std::size_t a = 0; a < Dim; ++a) {
        off[a] = offsets[a];
    }
    std::array<double, Dim * Dim> re{};
    std::array<double, Dim * Dim> im{};
    for_each_base<Dim>(outer, sorted, [&](std::size_t base) {
        std::array<double, Dim> vr;
        std::array<double, Dim> vi;
        for (std::size_t a = 0; a < Dim; ++a) {
            vr[a] = amp[base + off[a]].real();
            vi[a] = amp[base + off[a]].imag();
        }
        for (std::size_t a = 0; a < Dim; ++a) {
            for (std::size_t b = a; b < Dim; ++b) {
                re[a * Dim + b] += vr[a] * vr[b] + vi[a] * vi[b];
                im[a * Dim + b] += vi[a] * vr[b] - vr[a] * vi[b];
            }
        }
    });
    for (std::size_t i = 0; i < Dim * Dim; ++i) {
        acc_re[i] += re[i];
        acc_im[i] += im[i];
    }
}

/// out[base + off[a]] (+)= sum_b M[a][b] in[base + off[b]] for every base.
template <std::size_t Dim, bool Accumulate>
void apply_local_matrix(const std::complex<double> *in, std::complex<double> *out,
                        std::size_t outer, std::span<const std::size_t> sorted,
                        const std::size_t *offsets, const std::complex<double> *matrix) {
    std::array<std::size_t, Dim> off{};
    std::array<double, Dim * Dim> mr{};
    std::array<double, Dim * Dim> mi{};
    for (std::size_t a = 0; a < Dim; ++a) {
        off[a] = offsets[a];
    }
    for (std::size_t i = 0; i < Dim * Dim; ++i) {
        mr[i] = matrix[i].real();
        mi[i] = matrix[i].imag();
    }
    for_each_base<Dim>(outer, sorted, [&](std::size_t base) {
        std::array<double, Dim> vr;
        std::array<double, Dim> vi;
        for (std::size_t a = 0; a < Dim; ++a) {
            vr[a] = in[base + off[a]].real();
            vi[a] = in[base + off[a]].imag();
        }
        for (std::size_t a = 0; a < Dim; ++a) {
            double sr = 0.0;
            double si = 0.0;
            for (std::size_t b = 0; b < Dim; ++b) {
                sr += mr[a * Dim + b] * vr[b] - mi[a * Dim + b] * vi[b];
                si += mr[a * Dim + b] * vi[b] + mi[a * Dim + b] * vr[b];
            }
            if constexpr (Accumulate) {
                out[base + off[a]] += std::complex<double>{sr, si};
            } else {
                out[base + off[a]] = std::complex<double>{sr, si};
            }
        }
    });
}

} // namespace anovqc::detail
