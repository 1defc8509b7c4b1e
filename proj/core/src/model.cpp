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

#include "anovqc/model.hpp"

#include <cmath>
#include <map>
#include <string>

#include "anovqc/errors.hpp"

namespace anovqc {

void ModelConfig::validate() const {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw ConfigError("n_qubits must lie in [1, " + std::to_string(kMaxQubits) + "]");
    }
    if (layers < 1) {
        throw ConfigError("layers must be positive");
    }
    if (k_local < 1 || k_local > kMaxLocality || k_local > n_qubits) {
        throw ConfigError("k_local " + std::to_string(k_local) +
                          " must lie in [1, min(3, n_qubits)]");
    }
    if (hr_height < 1 || hr_width < 1) {
        throw ConfigError("HR dimensions must be positive");
    }
    if (!encoding_axes.empty() && encoding_axes.size() != n_qubits) {
        throw ConfigError("encoding_axes must be empty or hold one axis per qubit");
    }
    if (!std::isfinite(angle_scale)) {
        throw ConfigError("angle_scale must be finite");
    }
}

AnoVqcModel AnoVqcModel::zeros(const ModelConfig &config) {
    config.validate();
    AnoVqcModel model{config, std::vector<double>(config.n_qubits * config.layers, 0.0), {}};
    model.heads.reserve(config.head_count());
    for (std::size_t m = 0; m < config.head_count(); ++m) {
        model.heads.push_back(MeasurementHead{head_subset(m, config.n_qubits, config.k_local),
                                              HermitianParams(config.k_local)});
    }
    return model;
}

void AnoVqcModel::validate() const {
    config.validate();
    if (theta.size() != config.n_qubits * config.layers) {
        throw ConfigError("theta has " + std::to_string(theta.size()) + " entries, expected " +
                          std::to_string(config.n_qubits * config.layers));
    }
    for (const double t : theta) {
        if (!std::isfinite(t)) {
            throw ConfigError("theta must be finite");
        }
    }
    if (heads.size() != config.head_count()) {
        throw ConfigError("model has " + std::to_string(heads.size()) + " heads, expected " +
                          std::to_string(config.head_count()));
    }
    for (const auto &head : heads) {
        if (head.subset.size() != config.k_local || head.params.locality() != config.k_local) {
            throw ConfigError("head locality differs from k_local");
        }
        try {
            validate_subset(head.subset, config.n_qubits);
        } catch (const InputError &e) {
            throw ConfigError(std::string("invalid head subset: ") + e.what());
        }
    }
}

std::size_t AnoVqcModel::parameter_count() const noexcept {
    std::size_t count = theta.size();
    for (const auto &head : heads) {
        count += head.params.size();
    }
    return count;
}

std::vector<double> AnoVqcModel::flatten_parameters() const {
    std::vector<double> flat;
    flat.reserve(parameter_count());
    flat.insert(flat.end(), theta.begin(), theta.end());
    for (const auto &head : heads) {
        const auto p = head.params.packed();
        flat.insert(flat.end(), p.begin(), p.end());
    }
    return flat;
}

void AnoVqcModel::assign_parameters(std::span<const double> flat) {
    if (flat.size() != parameter_count()) {
        throw InputError("parameter vector has wrong length");
    }
    auto it = flat.begin();
    std::copy(it, it + static_cast<std::ptrdiff_t>(theta.size()), theta.begin());
    it += static_cast<std::ptrdiff_t>(theta.size());
    for (auto &head : heads) {
        auto dst = head.params.packed();
        std::copy(it, it + static_cast<std::ptrdiff_t>(dst.size()), dst.begin());
        it += static_cast<std::ptrdiff_t>(dst.size());
    }
}

std::vector<std::size_t> head_subset(std::size_t head_index, std::size_t n_qubits,
                                     std::size_t k) {
    std::vector<std::size_t> subset(k);
    for (std::size_t j = 0; j < k; ++j) {
        subset[j] = (head_index + j) % n_qubits;
    }
    return subset;
}

std::vector<std::pair<std::size_t, std::size_t>> entangler_pairs(std::size_t n_qubits) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t q = 0; q + 1 < n_qubits; q += 2) {
        pairs.emplace_back(q, q + 1);
    }
    for (std::size_t q = 1; q + 1 < n_qubits; q += 2) {
        pairs.emplace_back(q, q + 1);
    }
    return pairs;
}

StateVector encode(std::span<const double> x, const ModelConfig &config) {
    if (x.size() != config.n_qubits) {
        throw InputError("input has " + std::to_string(x.size()) + " features, model expects " +
                         std::to_string(config.n_qubits));
    }
    for (const double v : x) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw InputError("input features must lie in [0, 1]");
        }
    }
    // The encoded state is a product state: build each factor on one qubit,
    // then take the tensor product (qubit q doubles the low 2^q block).
    std::vector<Complex> amp(std::size_t{1} << config.n_qubits);
    amp[0] = 1.0;
    for (std::size_t q = 0; q < config.n_qubits; ++q) {
        auto single = StateVector::zero(1);
        single.apply_hadamard(0);
        single.apply_rotation(0, config.encoding_axis(q), config.angle_scale * x[q]);
        const Complex u0 = single.amplitudes()[0];
        const Complex u1 = single.amplitudes()[1];
        const std::size_t half = std::size_t{1} << q;
        for (std::size_t i = 0; i < half; ++i) {
            amp[i + half] = amp[i] * u1;
            amp[i] *= u0;
        }
    }
    return StateVector::from_amplitudes(std::move(amp));
}

namespace {

void check_theta(std::span<const double> theta, const ModelConfig &config) {
    if (theta.size() != config.n_qubits * config.layers) {
        throw ConfigError("theta shape does not match (n_qubits, layers)");
    }
}

} // namespace

void apply_variational(StateVector &state, std::span<const double> theta,
                       const ModelConfig &config) {
    check_theta(theta, config);
    const auto pairs = entangler_pairs(config.n_qubits);
    for (std::size_t l = 0; l < config.layers; ++l) {
        for (const auto &[c, t] : pairs) {
            state.apply_cnot(c, t);
        }
        for (std::size_t q = 0; q < config.n_qubits; ++q) {
            state.apply_rotation(q, PauliAxis::Y, theta[q * config.layers + l]);
        }
    }
}

void apply_variational_inverse(StateVector &state, std::span<const double> theta,
                               const ModelConfig &config) {
    check_theta(theta, config);
    const auto pairs = entangler_pairs(config.n_qubits);
    for (std::size_t l = config.layers; l-- > 0;) {
        for (std::size_t q = config.n_qubits; q-- > 0;) {
            state.apply_rotation(q, PauliAxis::Y, -theta[q * config.layers + l]);
        }
        for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
            state.apply_cnot(it->first, it->second);
        }
    }
}

SubsetGroups group_heads(std::span<const MeasurementHead> heads) {
    SubsetGroups groups;
    std::map<std::vector<std::size_t>, std::size_t> index;
    groups.head_group.reserve(heads.size());
    for (const auto &head : heads) {
        auto [it, inserted] = index.try_emplace(head.subset, groups.subsets.size());
        if (inserted) {
            groups.subsets.push_back(head.subset);
        }
        groups.head_group.push_back(it->second);
    }
    return groups;
}

StateVector prepare_state(const AnoVqcModel &model, std::span<const double> x) {
    auto state = encode(x, model.config);
    apply_variational(state, model.theta, model.config);
    return state;
}

std::vector<double> measure_heads(const AnoVqcModel &model, const StateVector &state) {
    const auto groups = group_heads(model.heads);
    std::vector<DensityMatrix> rhos;
    rhos.reserve(groups.subsets.size());
    for (const auto &subset : groups.subsets) {
        rhos.push_back(reduced_density_matrix(state, subset));
    }
    std::vector<double> y(model.heads.size());
    for (std::size_t m = 0; m < model.heads.size(); ++m) {
        y[m] = expectation(rhos[groups.head_group[m]], model.heads[m].params);
    }
    return y;
}

std::vector<double> forward(const AnoVqcModel &model, std::span<const double> x) {
    return measure_heads(model, prepare_state(model, x));
}

} // namespace anovqc
