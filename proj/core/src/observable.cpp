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

#include "anovqc/observable.hpp"

#include <cmath>
#include <string>

#include "anovqc/errors.hpp"
#include "bits.hpp"
#include "kernels.hpp"

namespace anovqc {

namespace {

void check_locality(std::size_t k) {
    if (k < 1 || k > kMaxLocality) {
        throw ConfigError("observable locality " + std::to_string(k) + " outside [1, " +
                          std::to_string(kMaxLocality) + "]");
    }
}

} // namespace

HermitianParams::HermitianParams(std::size_t k) : k_{k} {
    check_locality(k);
    values_.assign(dim() * dim(), 0.0);
}

HermitianParams::HermitianParams(std::size_t k, std::vector<double> packed)
    : k_{k}, values_{std::move(packed)} {
    check_locality(k);
    if (values_.size() != dim() * dim()) {
        throw ConfigError("locality " + std::to_string(k) + " needs " +
                          std::to_string(dim() * dim()) + " parameters, got " +
                          std::to_string(values_.size()));
    }
    for (const double v : values_) {
        if (!std::isfinite(v)) {
            throw InputError("observable parameters must be finite");
        }
    }
}

HermitianParams HermitianParams::identity(std::size_t k) {
    HermitianParams p(k);
    for (std::size_t i = 0; i < p.dim(); ++i) {
        p.diag(i) = 1.0;
    }
    return p;
}

std::size_t HermitianParams::re_index(std::size_t i, std::size_t j) const {
    const std::size_t n = dim();
    if (!(i < j && j < n)) {
        throw IndexError("off-diagonal index (" + std::to_string(i) + ", " +
                         std::to_string(j) + ") is not strictly upper triangular");
    }
    // Pairs before row i: sum_{r<i} (n-1-r).
    const std::size_t before = i * (2 * n - i - 1) / 2;
    return n + before + (j - i - 1);
}

std::size_t HermitianParams::im_index(std::size_t i, std::size_t j) const {
    const std::size_t n = dim();
    return re_index(i, j) + n * (n - 1) / 2;
}

std::vector<Complex> build_hermitian(const HermitianParams &params) {
    const std::size_t n = params.dim();
    std::vector<Complex> m(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        m[i * n + i] = Complex{params.diag(i), 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            const double a = params.re(i, j);
            const double b = params.im(i, j);
            m[i * n + j] = Complex{a, b};
            m[j * n + i] = Complex{a, -b};
        }
    }
    return m;
}

double DensityMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        t += entries[i * dim + i].real();
    }
    return t;
}

void validate_subset(std::span<const std::size_t> subset, std::size_t n_qubits) {
    if (subset.empty() || subset.size() > kMaxLocality) {
        throw InputError("subset size " + std::to_string(subset.size()) + " outside [1, " +
                         std::to_string(kMaxLocality) + "]");
    }
    if (subset.size() > n_qubits) {
        throw InputError("subset larger than the register");
    }
    for (std::size_t j = 0; j < subset.size(); ++j) {
        if (subset[j] >= n_qubits) {
            throw IndexError("subset qubit " + std::to_string(subset[j]) +
                             " out of range for " + std::to_string(n_qubits) + " qubits");
        }
        for (std::size_t i = 0; i < j; ++i) {
            if (subset[i] == subset[j]) {
                throw InputError("duplicate qubit " + std::to_string(subset[j]) +
                                 " in subset");
            }
        }
    }
}

DensityMatrix reduced_density_matrix(const StateVector &state,
                                     std::span<const std::size_t> subset) {
    validate_subset(subset, state.num_qubits());
    const std::size_t k = subset.size();
    const std::size_t dim = std::size_t{1} << k;
    const auto offsets = detail::local_offsets(subset);
    const auto sorted = detail::sorted_wires(subset);
    const std::size_t outer = state.size() >> k;
    const Complex *amp = state.amplitudes().data();

    std::vector<double> acc_re(dim * dim, 0.0);
    std::vector<double> acc_im(dim * dim, 0.0);
    switch (k) {
    case 1:
        detail::accumulate_rdm<2>(amp, outer, sorted, offsets.data(), acc_re.data(), acc_im.data());
        break;
    case 2:
        detail::accumulate_rdm<4>(amp, outer, sorted, offsets.data(), acc_re.data(), acc_im.data());
        break;
    default:
        detail::accumulate_rdm<8>(amp, outer, sorted, offsets.data(), acc_re.data(), acc_im.data());
        break;
    }

    DensityMatrix rho{dim, std::vector<Complex>(dim * dim)};
    for (std::size_t a = 0; a < dim; ++a) {
        rho.entries[a * dim + a] = Complex{acc_re[a * dim + a], 0.0};
        for (std::size_t b = a + 1; b < dim; ++b) {
            rho.entries[a * dim + b] = Complex{acc_re[a * dim + b], acc_im[a * dim + b]};
            rho.entries[b * dim + a] = Complex{acc_re[a * dim + b], -acc_im[a * dim + b]};
        }
    }
    return rho;
}

double expectation(const DensityMatrix &rho, const HermitianParams &params) {
    if (rho.dim != params.dim()) {
        throw InputError("density matrix and observable dimensions differ");
    }
    const std::size_t n = rho.dim;
    const auto h = build_hermitian(params);
    double re = 0.0;
    double im = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const Complex r = rho.entries[a * n + b];
            const Complex x = h[b * n + a];
            re += r.real() * x.real() - r.imag() * x.imag();
            im += r.real() * x.imag() + r.imag() * x.real();
        }
    }
    if (!(std::abs(im) <= 1e-8)) {
        throw NumericalError("expectation has imaginary residue " + std::to_string(im));
    }
    return re;
}

double expectation(const StateVector &state, std::span<const std::size_t> subset,
                   const HermitianParams &params) {
    if (subset.size() != params.locality()) {
        throw InputError("subset size does not match observable locality");
    }
    return expectation(reduced_density_matrix(state, subset), params);
}

std::vector<double> expectation_grad_phi(const DensityMatrix &rho) {
    const std::size_t n = rho.dim;
    const std::size_t pairs = n * (n - 1) / 2;
    std::vector<double> g(n * n, 0.0);
    std::size_t p = 0;
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = rho.at(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j, ++p) {
            g[n + p] = 2.0 * rho.at(i, j).real();
            g[n + pairs + p] = 2.0 * rho.at(i, j).imag();
        }
    }
    return g;
}

std::vector<double> expectation_grad_phi(const StateVector &state,
                                         std::span<const std::size_t> subset,
                                         const HermitianParams &params) {
    if (subset.size() != params.locality()) {
        throw InputError("subset size does not match observable locality");
    }
    return expectation_grad_phi(reduced_density_matrix(state, subset));
}

} // namespace anovqc
