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
 * @file gradcheck.hpp
 * Cross-engine gradient self-test on small random models.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace anovqc::cli {

struct GradcheckOptions {
    std::uint64_t seed{0};
    std::size_t models{12};
    std::size_t max_qubits{5};
    std::size_t max_layers{3};
    double rel_tol{1e-5};
    double abs_floor{1e-8};

    /// Test-only fault injection: adds `delta` to one flat entry of the
    /// adjoint gradient of every model that has that many parameters.
    struct Fault {
        std::size_t flat_index{0};
        double delta{1e-3};
    };
    std::optional<Fault> fault;
};

struct GradcheckFailure {
    std::size_t model{0};
    std::string pair;
    std::size_t flat_index{0};
    double a{0.0};
    double b{0.0};
};

struct GradcheckReport {
    bool pass{true};
    double max_rel_adjoint_shift{0.0};
    double max_rel_adjoint_fd{0.0};
    double max_rel_shift_fd{0.0};
    double max_abs_single_qubit{0.0}; // |adjoint + cos(theta)| on the n = 1 case
    std::vector<GradcheckFailure> failures;
};

/// Runs the suite and prints a human-readable summary to `out`.
GradcheckReport cmd_gradcheck(const GradcheckOptions &options, std::ostream &out);

} // namespace anovqc::cli
