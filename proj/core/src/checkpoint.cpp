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

#include "anovqc/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "anovqc/errors.hpp"

namespace anovqc {

using nlohmann::json;

namespace {

json config_to_json(const ModelConfig &c) {
    std::string axes;
    for (std::size_t q = 0; q < c.n_qubits; ++q) {
        axes.push_back(axis_name(c.encoding_axis(q)));
    }
    return json{{"n_qubits", c.n_qubits}, {"layers", c.layers},
                {"k_local", c.k_local},   {"hr_height", c.hr_height},
                {"hr_width", c.hr_width}, {"encoding_axes", axes},
                {"angle_scale", c.angle_scale}};
}

ModelConfig config_from_json(const json &j) {
    ModelConfig c;
    c.n_qubits = j.at("n_qubits").get<std::size_t>();
    c.layers = j.at("layers").get<std::size_t>();
    c.k_local = j.at("k_local").get<std::size_t>();
    c.hr_height = j.at("hr_height").get<std::size_t>();
    c.hr_width = j.at("hr_width").get<std::size_t>();
    c.angle_scale = j.at("angle_scale").get<double>();
    const auto axes = j.at("encoding_axes").get<std::string>();
    bool all_y = true;
    for (const char a : axes) {
        c.encoding_axes.push_back(parse_axis(a));
        all_y = all_y && c.encoding_axes.back() == PauliAxis::Y;
    }
    if (all_y) {
        c.encoding_axes.clear();
    }
    return c;
}

} // namespace

std::string checkpoint_to_json(const Checkpoint &checkpoint) {
    const auto &model = checkpoint.model;
    json heads = json::array();
    for (const auto &head : model.heads) {
        const auto packed = head.params.packed();
        heads.push_back(json{{"subset", head.subset},
                             {"phi", std::vector<double>(packed.begin(), packed.end())}});
    }
    json doc{{"format", kCheckpointFormat},
             {"version", kCheckpointVersion},
             {"config", config_to_json(model.config)},
             {"theta", model.theta},
             {"heads", heads}};
    if (checkpoint.progress) {
        const auto &p = *checkpoint.progress;
        doc["training"] = json{{"epoch", p.epoch},
                               {"rng_seed", p.rng_seed},
                               {"adam", {{"step", p.adam.step}, {"m", p.adam.m}, {"v", p.adam.v}}}};
    }
    return doc.dump(1);
}

namespace {

Checkpoint parse_checkpoint(const std::string &text) {
    Checkpoint cp;
    {
        const json doc = json::parse(text);
        if (doc.at("format").get<std::string>() != kCheckpointFormat) {
            throw FormatError("not an anovqc checkpoint");
        }
        const int version = doc.at("version").get<int>();
        if (version != kCheckpointVersion) {
            throw FormatError("unsupported checkpoint version " + std::to_string(version));
        }
        cp.model.config = config_from_json(doc.at("config"));
        cp.model.config.validate();
        cp.model.theta = doc.at("theta").get<std::vector<double>>();
        for (const auto &h : doc.at("heads")) {
            const auto subset = h.at("subset").get<std::vector<std::size_t>>();
            cp.model.heads.push_back(MeasurementHead{
                subset,
                HermitianParams(subset.size(), h.at("phi").get<std::vector<double>>())});
        }
        if (doc.contains("training")) {
            const auto &t = doc.at("training");
            TrainingProgress p;
            p.epoch = t.at("epoch").get<std::size_t>();
            p.rng_seed = t.at("rng_seed").get<std::uint64_t>();
            p.adam.step = t.at("adam").at("step").get<std::uint64_t>();
            p.adam.m = t.at("adam").at("m").get<std::vector<double>>();
            p.adam.v = t.at("adam").at("v").get<std::vector<double>>();
            cp.progress = std::move(p);
        }
    }
    cp.model.validate();
    if (cp.progress && (cp.progress->adam.m.size() != cp.model.parameter_count() ||
                        cp.progress->adam.v.size() != cp.model.parameter_count())) {
        throw FormatError("checkpoint optimizer state does not match the model");
    }
    return cp;
}

} // namespace

Checkpoint checkpoint_from_json(const std::string &text) {
    try {
        return parse_checkpoint(text);
    } catch (const json::exception &e) {
        throw FormatError(std::string("malformed checkpoint: ") + e.what());
    } catch (const FormatError &) {
        throw;
    } catch (const Error &e) {
        throw FormatError(std::string("invalid checkpoint: ") + e.what());
    }
}

void save_checkpoint(const std::filesystem::path &path, const Checkpoint &checkpoint) {
    const auto text = checkpoint_to_json(checkpoint);
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) {
            throw ConfigError("cannot write " + tmp.string());
        }
        out << text << '\n';
        if (!out) {
            throw ConfigError("failed writing " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

Checkpoint load_checkpoint(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open checkpoint " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return checkpoint_from_json(ss.str());
    } catch (const FormatError &e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

} // namespace anovqc
