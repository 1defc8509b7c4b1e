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
 * @file statevector.hpp
 * Dense pure-state simulation of n-qubit registers.
 *
 * Basis index convention: qubit q is bit q of the amplitude index, so qubit 0
 * is the least significant bit.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace anovqc {

using Complex = std::complex<double>;

enum class PauliAxis { X, Y, Z };

/// Largest register the simulator accepts (2^24 amplitudes, 256 MiB).
inline constexpr std::size_t kMaxQubits = 24;

class StateVector {
  public:
    /// |0...0> on `n_qubits` wires. Throws ConfigError outside [1, kMaxQubits].
    [[nodiscard]] static StateVector zero(std::size_t n_qubits);

    /// Wraps explicit amplitudes; length must be a power of two >= 2.
    [[nodiscard]] static StateVector from_amplitudes(std::vector<Complex> amplitudes);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amplitudes_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept {
        return amplitudes_;
    }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amplitudes_; }
    [[nodiscard]] const Complex &operator[](std::size_t i) const { return amplitudes_[i]; }

    [[nodiscard]] double norm() const noexcept;

    StateVector &apply_hadamard(std::size_t q);

    /// exp(-i angle sigma_axis / 2) on wire q.
    StateVector &apply_rotation(std::size_t q, PauliAxis axis, double angle);

    StateVector &apply_cnot(std::size_t control, std::size_t target);

    /// Applies sigma_axis (not a rotation) on wire q.
    StateVector &apply_pauli(std::size_t q, PauliAxis axis);

    /**
     * @brief Applies a dense K x K matrix (row-major, K = 2^wires.size()) on
     * the given wires. Local index bit j corresponds to wires[j]. The matrix
     * need not be unitary.
     */
    StateVector &apply_matrix(std::span<const std::size_t> wires,
                              std::span<const Complex> matrix);

    /// this += (matrix on wires) source. Same matrix conventions as apply_matrix; k <= 3.
    StateVector &accumulate_matrix_action(std::span<const std::size_t> wires,
                                          std::span<const Complex> matrix,
                                          const StateVector &source);

    /// <this|other>, conjugating this.
    [[nodiscard]] Complex inner(const StateVector &other) const;

    StateVector &operator+=(const StateVector &other);

  private:
    StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes)
        : n_qubits_{n_qubits}, amplitudes_{std::move(amplitudes)} {}

    void check_wire(std::size_t q) const;

    std::size_t n_qubits_{0};
    std::vector<Complex> amplitudes_;
};

/// Im <bra| sigma_axis(q) |ket>, the building block of adjoint rotation gradients.
[[nodiscard]] double pauli_inner_imag(const StateVector &bra, const StateVector &ket,
                                      std::size_t q, PauliAxis axis);

/// Parses "X", "Y" or "Z" (case-insensitive). Throws InputError otherwise.
[[nodiscard]] PauliAxis parse_axis(char c);
[[nodiscard]] char axis_name(PauliAxis axis) noexcept;

} // namespace anovqc
