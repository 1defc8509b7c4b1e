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

#include "gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>

#include "anovqc/grad.hpp"
#include "anovqc/model.hpp"

namespace anovqc::cli {

namespace {

struct Case {
    AnoVqcModel model;
    std::vector<double> x;
    std::vector<double> upstream;
};

Case random_case(std::mt19937_64 &rng, const GradcheckOptions &opt) {
    std::uniform_int_distribution<std::size_t> qubits(1, opt.max_qubits);
    std::uniform_int_distribution<std::size_t> layers(1, opt.max_layers);
    std::uniform_int_distribution<std::size_t> side(1, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::normal_distribution<double> normal(0.0, 1.0);

    ModelConfig mc;
    mc.n_qubits = qubits(rng);
    mc.layers = layers(rng);
    mc.k_local = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(3, mc.n_qubits))(rng);
    mc.hr_height = side(rng);
    mc.hr_width = side(rng);
    Case c{AnoVqcModel::zeros(mc), {}, {}};
    for (auto &t : c.model.theta) {
        t = angle(rng);
    }
    for (auto &h : c.model.heads) {
        for (auto &p : h.params.packed()) {
            p = normal(rng);
        }
    }
    c.x.resize(mc.n_qubits);
    for (auto &v : c.x) {
        v = unit(rng);
    }
    c.upstream.resize(mc.head_count());
    for (auto &u : c.upstream) {
        u = normal(rng);
    }
    return c;
}

double rel_dev(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

} // namespace

GradcheckReport cmd_gradcheck(const GradcheckOptions &options, std::ostream &out) {
    GradcheckReport report;
    std::mt19937_64 rng(options.seed);

    auto compare = [&](std::size_t model_idx, const char *pair, const std::vector<double> &a,
                       const std::vector<double> &b, double &max_rel) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double diff = std::abs(a[i] - b[i]);
            const double tol =
                std::max(options.rel_tol * std::max(std::abs(a[i]), std::abs(b[i])),
                         options.abs_floor);
            if (std::max(std::abs(a[i]), std::abs(b[i])) > options.abs_floor) {
                max_rel = std::max(max_rel, rel_dev(a[i], b[i]));
            }
            if (!(diff <= tol)) {
                report.pass = false;
                report.failures.push_back(GradcheckFailure{model_idx, pair, i, a[i], b[i]});
            }
        }
    };

    for (std::size_t idx = 0; idx < options.models; ++idx) {
        const auto c = random_case(rng, options);
        auto adjoint = adjoint_gradient(c.model, c.x, c.upstream).flatten();
        if (options.fault && options.fault->flat_index < adjoint.size()) {
            adjoint[options.fault->flat_index] += options.fault->delta;
        }
        const auto shift = param_shift_gradient(c.model, c.x, c.upstream).flatten();
        const auto fd = finite_difference_gradient(c.model, c.x, c.upstream).flatten();
        compare(idx, "adjoint/param-shift", adjoint, shift, report.max_rel_adjoint_shift);
        compare(idx, "adjoint/finite-diff", adjoint, fd, report.max_rel_adjoint_fd);
        compare(idx, "param-shift/finite-diff", shift, fd, report.max_rel_shift_fd);
    }

    // One qubit, one layer, Pauli-Z readout at x = 0: y = -sin(theta).
    ModelConfig single;
    single.n_qubits = 1;
    single.layers = 1;
    single.k_local = 1;
    single.hr_height = 1;
    single.hr_width = 1;
    auto model = AnoVqcModel::zeros(single);
    model.heads[0].params.diag(0) = 1.0;
    model.heads[0].params.diag(1) = -1.0;
    const std::vector<double> x{0.0};
    const std::vector<double> up{1.0};
    for (int i = 0; i < 10; ++i) {
        const double theta = -std::numbers::pi + (2.0 * std::numbers::pi * i) / 10.0 + 0.1;
        model.theta[0] = theta;
        const double d = adjoint_gradient(model, x, up).d_theta[0];
        report.max_abs_single_qubit =
            std::max(report.max_abs_single_qubit, std::abs(d + std::cos(theta)));
    }
    if (!(report.max_abs_single_qubit <= 1e-9)) {
        report.pass = false;
        report.failures.push_back(GradcheckFailure{options.models, "single-qubit/-cos", 0,
                                                   report.max_abs_single_qubit, 0.0});
    }

    out << std::scientific << std::setprecision(3);
    out << "gradcheck seed " << options.seed << ", " << options.models << " random models\n";
    out << "  max rel deviation adjoint vs param-shift:     "
        << report.max_rel_adjoint_shift << '\n';
    out << "  max rel deviation adjoint vs finite-diff:     "
        << report.max_rel_adjoint_fd << '\n';
    out << "  max rel deviation param-shift vs finite-diff: "
        << report.max_rel_shift_fd << '\n';
    out << "  single-qubit |dy/dtheta + cos(theta)|:        " << report.max_abs_single_qubit
        << '\n';
    for (const auto &f : report.failures) {
        out << "  FAIL model " << f.model << " " << f.pair << " parameter " << f.flat_index
            << ": " << f.a << " vs " << f.b << '\n';
    }
    out << (report.pass ? "PASS" : "FAIL") << '\n';
    return report;
}

} // namespace anovqc::cli
