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
 * @file observable.hpp
 * Trainable k-local Hermitian observables and their measurement through
 * reduced density matrices.
 */
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "anovqc/statevector.hpp"

namespace anovqc {

inline constexpr std::size_t kMaxLocality = 3;

/**
 * @brief The K^2 real parameters of a K x K Hermitian matrix, K = 2^k.
 *
 * Packed layout, fixed for checkpoint compatibility:
 *   [0, K)                      diagonal c_ii
 *   [K, K + P)                  real parts a_ij of the upper triangle, i < j, row-major
 *   [K + P, K + 2P)             imaginary parts b_ij, same order
 * with P = K(K-1)/2. The matrix is M_ii = c_ii, M_ij = a_ij + i b_ij,
 * M_ji = a_ij - i b_ij.
 */
class HermitianParams {
  public:
    /// All-zero parameters for locality k in [1, kMaxLocality].
    explicit HermitianParams(std::size_t k);
    HermitianParams(std::size_t k, std::vector<double> packed);

    /// Parameters of the identity matrix (diag all 1).
    [[nodiscard]] static HermitianParams identity(std::size_t k);

    [[nodiscard]] std::size_t locality() const noexcept { return k_; }
    [[nodiscard]] std::size_t dim() const noexcept { return std::size_t{1} << k_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

    [[nodiscard]] std::span<const double> packed() const noexcept { return values_; }
    [[nodiscard]] std::span<double> packed() noexcept { return values_; }

    [[nodiscard]] double diag(std::size_t i) const { return values_[i]; }
    [[nodiscard]] double re(std::size_t i, std::size_t j) const { return values_[re_index(i, j)]; }
    [[nodiscard]] double im(std::size_t i, std::size_t j) const { return values_[im_index(i, j)]; }
    double &diag(std::size_t i) { return values_[i]; }
    double &re(std::size_t i, std::size_t j) { return values_[re_index(i, j)]; }
    double &im(std::size_t i, std::size_t j) { return values_[im_index(i, j)]; }

    /// Packed position of a_ij, requires i < j < K.
    [[nodiscard]] std::size_t re_index(std::size_t i, std::size_t j) const;
    /// Packed position of b_ij, requires i < j < K.
    [[nodiscard]] std::size_t im_index(std::size_t i, std::size_t j) const;

  private:
    std::size_t k_;
    std::vector<double> values_;
};

/// Row-major K x K complex matrix, Hermitian by construction.
[[nodiscard]] std::vector<Complex> build_hermitian(const HermitianParams &params);

/// Reduced density matrix of a k-qubit subset. Local index bit j <-> subset[j].
struct DensityMatrix {
    std::size_t dim{0};
    std::vector<Complex> entries; // row-major dim x dim

    [[nodiscard]] const Complex &at(std::size_t i, std::size_t j) const {
        return entries[i * dim + j];
    }
    [[nodiscard]] double trace() const;
};

/// Throws InputError/IndexError unless `subset` holds 1..kMaxLocality distinct wires < n_qubits.
void validate_subset(std::span<const std::size_t> subset, std::size_t n_qubits);

[[nodiscard]] DensityMatrix reduced_density_matrix(const StateVector &state,
                                                   std::span<const std::size_t> subset);

/**
 * @brief Tr(rho H(phi)).
 *
 * Throws NumericalError if the imaginary residue of the trace exceeds 1e-8.
 */
[[nodiscard]] double expectation(const DensityMatrix &rho, const HermitianParams &params);

/// <state| H(phi) (x) I |state> with H acting on `subset`.
[[nodiscard]] double expectation(const StateVector &state, std::span<const std::size_t> subset,
                                 const HermitianParams &params);

/**
 * @brief d<H>/dphi in packed order: Re(rho_ii), 2 Re(rho_ij), 2 Im(rho_ij).
 *
 * The expectation is linear in phi, so this is exact and independent of the
 * current parameter values.
 */
[[nodiscard]] std::vector<double> expectation_grad_phi(const DensityMatrix &rho);

[[nodiscard]] std::vector<double> expectation_grad_phi(const StateVector &state,
                                                       std::span<const std::size_t> subset,
                                                       const HermitianParams &params);

} // namespace anovqc
