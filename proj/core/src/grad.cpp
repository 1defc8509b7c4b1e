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

#include "anovqc/grad.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "anovqc/errors.hpp"

namespace anovqc {

GradientBundle GradientBundle::zeros_like(const AnoVqcModel &model) {
    GradientBundle g;
    g.d_theta.assign(model.theta.size(), 0.0);
    g.d_phi.reserve(model.heads.size());
    for (const auto &head : model.heads) {
        g.d_phi.emplace_back(head.params.size(), 0.0);
    }
    return g;
}

std::vector<double> GradientBundle::flatten() const {
    std::vector<double> flat(d_theta);
    for (const auto &block : d_phi) {
        flat.insert(flat.end(), block.begin(), block.end());
    }
    return flat;
}

void GradientBundle::add_scaled(const GradientBundle &other, double scale) {
    if (other.d_theta.size() != d_theta.size() || other.d_phi.size() != d_phi.size()) {
        throw InputError("gradient bundle shapes differ");
    }
    for (std::size_t i = 0; i < d_theta.size(); ++i) {
        d_theta[i] += scale * other.d_theta[i];
    }
    for (std::size_t m = 0; m < d_phi.size(); ++m) {
        if (other.d_phi[m].size() != d_phi[m].size()) {
            throw InputError("gradient bundle shapes differ");
        }
        for (std::size_t i = 0; i < d_phi[m].size(); ++i) {
            d_phi[m][i] += scale * other.d_phi[m][i];
        }
    }
}

namespace {

void check_upstream(const AnoVqcModel &model, std::span<const double> upstream) {
    if (upstream.size() != model.heads.size()) {
        throw InputError("upstream has " + std::to_string(upstream.size()) +
                         " entries, model has " + std::to_string(model.heads.size()) +
                         " heads");
    }
    for (const double u : upstream) {
        if (!std::isfinite(u)) {
            throw InputError("upstream gradient must be finite");
        }
    }
}

double weighted_output(const AnoVqcModel &model, std::span<const double> x,
                       std::span<const double> upstream) {
    const auto y = forward(model, x);
    double acc = 0.0;
    for (std::size_t m = 0; m < y.size(); ++m) {
        acc += upstream[m] * y[m];
    }
    return acc;
}

// d_phi[m] = upstream[m] * d y_m / d phi_m, from one density matrix per subset.
void fill_phi_gradient(const AnoVqcModel &model, const StateVector &state,
                       const SubsetGroups &groups, std::span<const double> upstream,
                       GradientBundle &out) {
    std::vector<std::vector<double>> per_group;
    per_group.reserve(groups.subsets.size());
    for (const auto &subset : groups.subsets) {
        per_group.push_back(expectation_grad_phi(reduced_density_matrix(state, subset)));
    }
    for (std::size_t m = 0; m < model.heads.size(); ++m) {
        const auto &g = per_group[groups.head_group[m]];
        for (std::size_t i = 0; i < g.size(); ++i) {
            out.d_phi[m][i] = upstream[m] * g[i];
        }
    }
}

} // namespace

ValueAndGradient adjoint_value_and_gradient(const AnoVqcModel &model, std::span<const double> x,
                                            const UpstreamFn &upstream_of) {
    const auto &cfg = model.config;
    auto psi = prepare_state(model, x);
    const auto groups = group_heads(model.heads);
    std::vector<DensityMatrix> rhos;
    rhos.reserve(groups.subsets.size());
    for (const auto &subset : groups.subsets) {
        rhos.push_back(reduced_density_matrix(psi, subset));
    }

    ValueAndGradient out{std::vector<double>(model.heads.size()), GradientBundle::zeros_like(model)};
    for (std::size_t m = 0; m < model.heads.size(); ++m) {
        out.outputs[m] = expectation(rhos[groups.head_group[m]], model.heads[m].params);
    }
    const auto upstream = upstream_of(out.outputs);
    check_upstream(model, upstream);
    auto &grad = out.grad;

    // phi: linear readout, so d y_m / d phi_m depends only on rho.
    std::vector<std::vector<double>> phi_grad;
    phi_grad.reserve(rhos.size());
    for (const auto &rho : rhos) {
        phi_grad.push_back(expectation_grad_phi(rho));
    }
    for (std::size_t m = 0; m < model.heads.size(); ++m) {
        const auto &g = phi_grad[groups.head_group[m]];
        for (std::size_t i = 0; i < g.size(); ++i) {
            grad.d_phi[m][i] = upstream[m] * g[i];
        }
    }

    // lambda = sum_g (sum_{m in g} upstream[m] H(phi_m)) (x) I |psi>
    const std::size_t dim_local = std::size_t{1} << cfg.k_local;
    std::vector<std::vector<Complex>> combined(groups.subsets.size(),
                                               std::vector<Complex>(dim_local * dim_local));
    std::vector<bool> used(groups.subsets.size(), false);
    for (std::size_t m = 0; m < model.heads.size(); ++m) {
        if (upstream[m] == 0.0) {
            continue;
        }
        const auto h = build_hermitian(model.heads[m].params);
        auto &acc = combined[groups.head_group[m]];
        for (std::size_t i = 0; i < h.size(); ++i) {
            acc[i] += upstream[m] * h[i];
        }
        used[groups.head_group[m]] = true;
    }
    auto lambda = StateVector::from_amplitudes(std::vector<Complex>(psi.size()));
    for (std::size_t g = 0; g < groups.subsets.size(); ++g) {
        if (used[g]) {
            lambda.accumulate_matrix_action(groups.subsets[g], combined[g], psi);
        }
    }

    // Reverse sweep: d<G>/d theta = Im <lambda| Y_q |psi> just after each rotation.
    const auto pairs = entangler_pairs(cfg.n_qubits);
    for (std::size_t l = cfg.layers; l-- > 0;) {
        for (std::size_t q = cfg.n_qubits; q-- > 0;) {
            const double angle = model.angle(q, l);
            grad.d_theta[q * cfg.layers + l] = pauli_inner_imag(lambda, psi, q, PauliAxis::Y);
            psi.apply_rotation(q, PauliAxis::Y, -angle);
            lambda.apply_rotation(q, PauliAxis::Y, -angle);
        }
        for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
            psi.apply_cnot(it->first, it->second);
            lambda.apply_cnot(it->first, it->second);
        }
    }
    return out;
}

GradientBundle adjoint_gradient(const AnoVqcModel &model, std::span<const double> x,
                                std::span<const double> upstream) {
    check_upstream(model, upstream);
    const std::vector<double> weights(upstream.begin(), upstream.end());
    return adjoint_value_and_gradient(model, x, [&](std::span<const double>) { return weights; })
        .grad;
}

GradientBundle param_shift_gradient(const AnoVqcModel &model, std::span<const double> x,
                                    std::span<const double> upstream) {
    check_upstream(model, upstream);
    auto grad = GradientBundle::zeros_like(model);
    const auto psi = prepare_state(model, x);
    fill_phi_gradient(model, psi, group_heads(model.heads), upstream, grad);

    constexpr double shift = std::numbers::pi / 2.0;
    AnoVqcModel shifted = model;
    for (std::size_t i = 0; i < model.theta.size(); ++i) {
        shifted.theta[i] = model.theta[i] + shift;
        const double plus = weighted_output(shifted, x, upstream);
        shifted.theta[i] = model.theta[i] - shift;
        const double minus = weighted_output(shifted, x, upstream);
        shifted.theta[i] = model.theta[i];
        grad.d_theta[i] = 0.5 * (plus - minus);
    }
    return grad;
}

GradientBundle finite_difference_gradient(const AnoVqcModel &model, std::span<const double> x,
                                          std::span<const double> upstream, double h) {
    check_upstream(model, upstream);
    if (!(h >= 1e-7 && h <= 1e-3)) {
        throw InputError("finite-difference step must lie in [1e-7, 1e-3]");
    }
    auto grad = GradientBundle::zeros_like(model);
    AnoVqcModel probe = model;
    auto central = [&](double &slot, double original) {
        slot = original + h;
        const double plus = weighted_output(probe, x, upstream);
        slot = original - h;
        const double minus = weighted_output(probe, x, upstream);
        slot = original;
        return (plus - minus) / (2.0 * h);
    };
    for (std::size_t i = 0; i < model.theta.size(); ++i) {
        grad.d_theta[i] = central(probe.theta[i], model.theta[i]);
    }
    for (std::size_t m = 0; m < model.heads.size(); ++m) {
        auto params = probe.heads[m].params.packed();
        const auto original = model.heads[m].params.packed();
        for (std::size_t i = 0; i < params.size(); ++i) {
            grad.d_phi[m][i] = central(params[i], original[i]);
        }
    }
    return grad;
}

} // namespace anovqc
