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

#include "anovqc/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <string>

#include "anovqc/errors.hpp"
#include "bits.hpp"
#include "kernels.hpp"

namespace anovqc {

StateVector StateVector::zero(std::size_t n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw ConfigError("qubit count " + std::to_string(n_qubits) +
                          " outside [1, " + std::to_string(kMaxQubits) + "]");
    }
    std::vector<Complex> amps(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
    amps[0] = Complex{1.0, 0.0};
    return StateVector(n_qubits, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    const std::size_t len = amplitudes.size();
    if (len < 2 || !std::has_single_bit(len)) {
        throw ConfigError("amplitude count must be a power of two >= 2, got " +
                          std::to_string(len));
    }
    const auto n = static_cast<std::size_t>(std::countr_zero(len));
    if (n > kMaxQubits) {
        throw ConfigError("state exceeds " + std::to_string(kMaxQubits) + " qubits");
    }
    return StateVector(n, std::move(amplitudes));
}

double StateVector::norm() const noexcept {
    double acc = 0.0;
    for (const auto &a : amplitudes_) {
        acc += a.real() * a.real() + a.imag() * a.imag();
    }
    return std::sqrt(acc);
}

void StateVector::check_wire(std::size_t q) const {
    if (q >= n_qubits_) {
        throw IndexError("qubit index " + std::to_string(q) + " out of range for " +
                         std::to_string(n_qubits_) + " qubits");
    }
}

StateVector &StateVector::apply_hadamard(std::size_t q) {
    check_wire(q);
    const double r = 1.0 / std::sqrt(2.0);
    // Interleaved re/im doubles: each block pairs 2*stride doubles with the next 2*stride.
    const std::size_t stride = std::size_t{2} << q;
    const std::size_t len = 2 * amplitudes_.size();
    double *d = reinterpret_cast<double *>(amplitudes_.data());
    for (std::size_t base = 0; base < len; base += 2 * stride) {
        double *x = d + base;
        double *y = x + stride;
        for (std::size_t j = 0; j < stride; ++j) {
            const double a = x[j];
            const double b = y[j];
            x[j] = r * (a + b);
            y[j] = r * (a - b);
        }
    }
    return *this;
}

StateVector &StateVector::apply_rotation(std::size_t q, PauliAxis axis, double angle) {
    check_wire(q);
    if (!std::isfinite(angle)) {
        throw InputError("rotation angle must be finite");
    }
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    const std::size_t stride = std::size_t{1} << q;
    const std::size_t dim = amplitudes_.size();
    Complex *amp = amplitudes_.data();

    switch (axis) {
    case PauliAxis::X:
        // [[c, -is], [-is, c]]
        for (std::size_t base = 0; base < dim; base += 2 * stride) {
            for (std::size_t i = base; i < base + stride; ++i) {
                const Complex a0 = amp[i];
                const Complex a1 = amp[i + stride];
                amp[i] = Complex{c * a0.real() + s * a1.imag(), c * a0.imag() - s * a1.real()};
                amp[i + stride] =
                    Complex{s * a0.imag() + c * a1.real(), -s * a0.real() + c * a1.imag()};
            }
        }
        break;
    case PauliAxis::Y: {
        // [[c, -s], [s, c]] is real, so it acts on re and im parts alike.
        const std::size_t dstride = 2 * stride;
        const std::size_t len = 2 * dim;
        double *d = reinterpret_cast<double *>(amp);
        for (std::size_t base = 0; base < len; base += 2 * dstride) {
            double *x = d + base;
            double *y = x + dstride;
            for (std::size_t j = 0; j < dstride; ++j) {
                const double a = x[j];
                const double b = y[j];
                x[j] = c * a - s * b;
                y[j] = s * a + c * b;
            }
        }
        break;
    }
    case PauliAxis::Z:
        // diag(c - is, c + is)
        for (std::size_t base = 0; base < dim; base += 2 * stride) {
            for (std::size_t i = base; i < base + stride; ++i) {
                const Complex a0 = amp[i];
                const Complex a1 = amp[i + stride];
                amp[i] = Complex{c * a0.real() + s * a0.imag(), c * a0.imag() - s * a0.real()};
                amp[i + stride] =
                    Complex{c * a1.real() - s * a1.imag(), c * a1.imag() + s * a1.real()};
            }
        }
        break;
    }
    return *this;
}

StateVector &StateVector::apply_cnot(std::size_t control, std::size_t target) {
    check_wire(control);
    check_wire(target);
    if (control == target) {
        throw InputError("CNOT control and target must differ (both " +
                         std::to_string(control) + ")");
    }
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    const std::size_t lo = std::size_t{1} << std::min(control, target);
    const std::size_t hi = std::size_t{1} << std::max(control, target);
    const std::size_t dim = amplitudes_.size();
    Complex *amp = amplitudes_.data();
    // i runs over indices with both wire bits clear.
    for (std::size_t a = 0; a < dim; a += 2 * hi) {
        for (std::size_t b = a; b < a + hi; b += 2 * lo) {
            Complex *src = amp + (b | cbit);
            Complex *dst = amp + (b | cbit | tbit);
            std::swap_ranges(src, src + lo, dst);
        }
    }
    return *this;
}

StateVector &StateVector::apply_pauli(std::size_t q, PauliAxis axis) {
    check_wire(q);
    const std::size_t stride = std::size_t{1} << q;
    const std::size_t dim = amplitudes_.size();
    Complex *amp = amplitudes_.data();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const Complex a0 = amp[i];
            const Complex a1 = amp[i + stride];
            switch (axis) {
            case PauliAxis::X:
                amp[i] = a1;
                amp[i + stride] = a0;
                break;
            case PauliAxis::Y:
                amp[i] = Complex{a1.imag(), -a1.real()};
                amp[i + stride] = Complex{-a0.imag(), a0.real()};
                break;
            case PauliAxis::Z:
                amp[i + stride] = -a1;
                break;
            }
        }
    }
    return *this;
}

StateVector &StateVector::apply_matrix(std::span<const std::size_t> wires,
                                       std::span<const Complex> matrix) {
    const std::size_t k = wires.size();
    if (k == 0 || k > n_qubits_) {
        throw InputError("matrix must act on between 1 and n_qubits wires");
    }
    for (std::size_t j = 0; j < k; ++j) {
        check_wire(wires[j]);
        for (std::size_t i = 0; i < j; ++i) {
            if (wires[i] == wires[j]) {
                throw InputError("duplicate wire " + std::to_string(wires[j]));
            }
        }
    }
    const std::size_t dim_local = std::size_t{1} << k;
    if (matrix.size() != dim_local * dim_local) {
        throw InputError("matrix size does not match wire count");
    }

    const auto offsets = detail::local_offsets(wires);
    const auto sorted = detail::sorted_wires(wires);
    const std::size_t outer = amplitudes_.size() >> k;
    Complex *amp = amplitudes_.data();
    switch (k) {
    case 1:
        detail::apply_local_matrix<2, false>(amp, amp, outer, sorted, offsets.data(), matrix.data());
        return *this;
    case 2:
        detail::apply_local_matrix<4, false>(amp, amp, outer, sorted, offsets.data(), matrix.data());
        return *this;
    case 3:
        detail::apply_local_matrix<8, false>(amp, amp, outer, sorted, offsets.data(), matrix.data());
        return *this;
    default:
        break;
    }
    std::vector<Complex> in(dim_local);
    for (std::size_t r = 0; r < outer; ++r) {
        const std::size_t base = detail::insert_zero_bits(r, sorted);
        for (std::size_t a = 0; a < dim_local; ++a) {
            in[a] = amp[base + offsets[a]];
        }
        for (std::size_t a = 0; a < dim_local; ++a) {
            double re = 0.0;
            double im = 0.0;
            const Complex *row = matrix.data() + a * dim_local;
            for (std::size_t b = 0; b < dim_local; ++b) {
                re += row[b].real() * in[b].real() - row[b].imag() * in[b].imag();
                im += row[b].real() * in[b].imag() + row[b].imag() * in[b].real();
            }
            amp[base + offsets[a]] = Complex{re, im};
        }
    }
    return *this;
}

StateVector &StateVector::accumulate_matrix_action(std::span<const std::size_t> wires,
                                                   std::span<const Complex> matrix,
                                                   const StateVector &source) {
    if (source.size() != size()) {
        throw InputError("accumulate_matrix_action: state sizes differ");
    }
    const std::size_t k = wires.size();
    if (k == 0 || k > 3 || k > n_qubits_) {
        throw InputError("accumulate_matrix_action supports 1 to 3 wires");
    }
    for (std::size_t j = 0; j < k; ++j) {
        check_wire(wires[j]);
        for (std::size_t i = 0; i < j; ++i) {
            if (wires[i] == wires[j]) {
                throw InputError("duplicate wire " + std::to_string(wires[j]));
            }
        }
    }
    if (matrix.size() != (std::size_t{1} << (2 * k))) {
        throw InputError("matrix size does not match wire count");
    }
    const auto offsets = detail::local_offsets(wires);
    const auto sorted = detail::sorted_wires(wires);
    const std::size_t outer = amplitudes_.size() >> k;
    const Complex *in = source.amplitudes_.data();
    Complex *out = amplitudes_.data();
    switch (k) {
    case 1:
        detail::apply_local_matrix<2, true>(in, out, outer, sorted, offsets.data(), matrix.data());
        break;
    case 2:
        detail::apply_local_matrix<4, true>(in, out, outer, sorted, offsets.data(), matrix.data());
        break;
    default:
        detail::apply_local_matrix<8, true>(in, out, outer, sorted, offsets.data(), matrix.data());
        break;
    }
    return *this;
}

Complex StateVector::inner(const StateVector &other) const {
    if (other.size() != size()) {
        throw InputError("inner product of states with different sizes");
    }
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        const Complex a = amplitudes_[i];
        const Complex b = other.amplitudes_[i];
        re += a.real() * b.real() + a.imag() * b.imag();
        im += a.real() * b.imag() - a.imag() * b.real();
    }
    return {re, im};
}

StateVector &StateVector::operator+=(const StateVector &other) {
    if (other.size() != size()) {
        throw InputError("sum of states with different sizes");
    }
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        amplitudes_[i] += other.amplitudes_[i];
    }
    return *this;
}

double pauli_inner_imag(const StateVector &bra, const StateVector &ket, std::size_t q,
                        PauliAxis axis) {
    if (bra.size() != ket.size()) {
        throw InputError("pauli_inner_imag: state sizes differ");
    }
    if (q >= ket.num_qubits()) {
        throw IndexError("qubit index " + std::to_string(q) + " out of range");
    }
    if (axis == PauliAxis::Y) {
        // Im<b|Y|k> = sum Re(conj(b1) k0) - Re(conj(b0) k1) over amplitude pairs.
        const std::size_t dstride = std::size_t{2} << q;
        const std::size_t len = 2 * ket.size();
        const auto *bd = reinterpret_cast<const double *>(bra.amplitudes().data());
        const auto *kd = reinterpret_cast<const double *>(ket.amplitudes().data());
        double acc = 0.0;
        for (std::size_t base = 0; base < len; base += 2 * dstride) {
            const double *b0 = bd + base;
            const double *b1 = b0 + dstride;
            const double *k0 = kd + base;
            const double *k1 = k0 + dstride;
            for (std::size_t j = 0; j < dstride; ++j) {
                acc += b1[j] * k0[j] - b0[j] * k1[j];
            }
        }
        return acc;
    }
    const std::size_t stride = std::size_t{1} << q;
    const std::size_t dim = ket.size();
    const Complex *b = bra.amplitudes().data();
    const Complex *k = ket.amplitudes().data();
    // Im(conj(x) * y) = x.re * y.im - x.im * y.re
    auto im_prod = [](const Complex &x, double yr, double yi) {
        return x.real() * yi - x.imag() * yr;
    };
    double acc = 0.0;
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const Complex k0 = k[i];
            const Complex k1 = k[i + stride];
            switch (axis) {
            case PauliAxis::X:
                acc += im_prod(b[i], k1.real(), k1.imag()) +
                       im_prod(b[i + stride], k0.real(), k0.imag());
                break;
            case PauliAxis::Y:
                acc += im_prod(b[i], k1.imag(), -k1.real()) +
                       im_prod(b[i + stride], -k0.imag(), k0.real());
                break;
            case PauliAxis::Z:
                acc += im_prod(b[i], k0.real(), k0.imag()) -
                       im_prod(b[i + stride], k1.real(), k1.imag());
                break;
            }
        }
    }
    return acc;
}

PauliAxis parse_axis(char c) {
    switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'X':
        return PauliAxis::X;
    case 'Y':
        return PauliAxis::Y;
    case 'Z':
        return PauliAxis::Z;
    default:
        throw InputError(std::string("unknown Pauli axis '") + c + "'");
    }
}

char axis_name(PauliAxis axis) noexcept {
    switch (axis) {
    case PauliAxis::X:
        return 'X';
    case PauliAxis::Y:
        return 'Y';
    case PauliAxis::Z:
        return 'Z';
    }
    return '?';
}

} // namespace anovqc
