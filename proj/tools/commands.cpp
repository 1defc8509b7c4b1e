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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "anovqc/checkpoint.hpp"
#include "anovqc/data.hpp"
#include "anovqc/errors.hpp"
#include "anovqc/pgm.hpp"

namespace anovqc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::size_t cmd_prepare(const PrepareArgs &args, std::ostream &log) {
    if (args.limit && *args.limit == 0) {
        throw ConfigError("empty dataset: limit must be positive");
    }
    const auto images = load_idx_images(args.images);
    const auto labels = load_idx_labels(args.labels);
    SrDataset ds{args.scale, build_sr_dataset(images, labels, args.scale, args.limit, args.seed)};
    write_dataset(args.out, ds);
    log << "wrote " << ds.samples.size() << " samples at scale x" << ds.scale << " ("
        << ds.samples.front().hr.height() << "x" << ds.samples.front().hr.width() << " HR) to "
        << args.out.string() << '\n';
    return ds.samples.size();
}

namespace {

const std::set<std::string> kRunConfigKeys = {
    "train_dataset", "val_dataset", "out_dir",      "resume_from",      "scale",
    "checkpoint_every", "layers",   "k_local",      "encoding_axis",    "angle_scale",
    "learning_rate", "adam_beta1",  "adam_beta2",   "adam_eps",         "epochs",
    "batch_size",    "c1",          "c2",           "rng_seed",         "theta_init_range",
    "phi_init_std",  "num_threads"};

fs::path resolve(const fs::path &base, const std::string &p) {
    const fs::path path(p);
    return path.is_absolute() ? path : base / path;
}

template <class T> void read_opt(const json &doc, const char *key, T &dst) {
    if (doc.contains(key)) {
        dst = doc.at(key).get<T>();
    }
}

} // namespace

RunConfig parse_run_config(const std::string &json_text, const fs::path &base_dir) {
    RunConfig cfg;
    try {
        const json doc = json::parse(json_text);
        if (!doc.is_object()) {
            throw ConfigError("run config must be a JSON object");
        }
        for (const auto &[key, _] : doc.items()) {
            if (kRunConfigKeys.count(key) == 0) {
                throw ConfigError("unknown run config key '" + key + "'");
            }
        }
        if (!doc.contains("train_dataset")) {
            throw ConfigError("run config needs 'train_dataset'");
        }
        cfg.train_dataset = resolve(base_dir, doc.at("train_dataset").get<std::string>());
        if (doc.contains("val_dataset")) {
            cfg.val_dataset = resolve(base_dir, doc.at("val_dataset").get<std::string>());
        }
        if (doc.contains("resume_from")) {
            cfg.resume_from = resolve(base_dir, doc.at("resume_from").get<std::string>());
        }
        cfg.out_dir = resolve(base_dir, doc.value("out_dir", std::string("run")));
        if (doc.contains("scale")) {
            cfg.scale = doc.at("scale").get<std::size_t>();
        }
        read_opt(doc, "checkpoint_every", cfg.checkpoint_every);
        read_opt(doc, "layers", cfg.model.layers);
        read_opt(doc, "k_local", cfg.model.k_local);
        read_opt(doc, "angle_scale", cfg.model.angle_scale);
        if (doc.contains("encoding_axis")) {
            const auto axes = doc.at("encoding_axis").get<std::string>();
            if (axes.empty()) {
                throw ConfigError("encoding_axis must not be empty");
            }
            for (const char a : axes) {
                cfg.model.encoding_axes.push_back(parse_axis(a));
            }
        }
        auto &t = cfg.train;
        read_opt(doc, "learning_rate", t.learning_rate);
        read_opt(doc, "adam_beta1", t.adam_beta1);
        read_opt(doc, "adam_beta2", t.adam_beta2);
        read_opt(doc, "adam_eps", t.adam_eps);
        read_opt(doc, "epochs", t.epochs);
        read_opt(doc, "batch_size", t.batch_size);
        read_opt(doc, "c1", t.c1);
        read_opt(doc, "c2", t.c2);
        read_opt(doc, "rng_seed", t.rng_seed);
        read_opt(doc, "theta_init_range", t.theta_init_range);
        read_opt(doc, "phi_init_std", t.phi_init_std);
        read_opt(doc, "num_threads", t.num_threads);
    } catch (const json::exception &e) {
        throw ConfigError(std::string("invalid run config: ") + e.what());
    } catch (const InputError &e) {
        throw ConfigError(std::string("invalid run config: ") + e.what());
    }
    if (cfg.checkpoint_every < 1) {
        throw ConfigError("checkpoint_every must be positive");
    }
    cfg.train.validate();
    return cfg;
}

RunConfig load_run_config(const fs::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str(), fs::absolute(path).parent_path());
}

namespace {

void require_file(const fs::path &p, const char *what) {
    if (!fs::is_regular_file(p)) {
        throw ConfigError(std::string(what) + " not found: " + p.string());
    }
}

ModelConfig model_config_for(const RunConfig &cfg, const SrDataset &ds) {
    ModelConfig mc = cfg.model;
    const auto &first = ds.samples.front();
    mc.n_qubits = first.lr.pixels().size();
    mc.hr_height = first.hr.height();
    mc.hr_width = first.hr.width();
    if (mc.encoding_axes.size() == 1) {
        mc.encoding_axes.assign(mc.n_qubits, mc.encoding_axes.front());
    }
    if (std::all_of(mc.encoding_axes.begin(), mc.encoding_axes.end(),
                    [](PauliAxis a) { return a == PauliAxis::Y; })) {
        mc.encoding_axes.clear();
    }
    mc.validate();
    return mc;
}

} // namespace

TrainSummary cmd_train(const RunConfig &config, const TrainOverrides &overrides,
                       std::ostream &log) {
    RunConfig cfg = config;
    if (overrides.seed) {
        cfg.train.rng_seed = *overrides.seed;
    }
    if (overrides.out_dir) {
        cfg.out_dir = *overrides.out_dir;
    }
    require_file(cfg.train_dataset, "train dataset");
    if (cfg.val_dataset) {
        require_file(*cfg.val_dataset, "validation dataset");
    }
    if (cfg.resume_from) {
        require_file(*cfg.resume_from, "resume checkpoint");
    }

    const auto train_ds = read_dataset(cfg.train_dataset);
    std::optional<SrDataset> val_ds;
    if (cfg.val_dataset) {
        val_ds = read_dataset(*cfg.val_dataset);
        if (val_ds->scale != train_ds.scale) {
            throw ConfigError("validation scale x" + std::to_string(val_ds->scale) +
                              " differs from training scale x" + std::to_string(train_ds.scale));
        }
    }
    if (cfg.scale && *cfg.scale != train_ds.scale) {
        throw ConfigError("config scale x" + std::to_string(*cfg.scale) +
                          " differs from dataset scale x" + std::to_string(train_ds.scale));
    }
    const auto mc = model_config_for(cfg, train_ds);

    AnoVqcModel model;
    FitOptions opts;
    if (cfg.resume_from) {
        auto cp = load_checkpoint(*cfg.resume_from);
        if (cp.model.config.hr_height != mc.hr_height || cp.model.config.hr_width != mc.hr_width) {
            throw ConfigError("checkpoint output " + std::to_string(cp.model.config.hr_height) +
                              "x" + std::to_string(cp.model.config.hr_width) +
                              " does not match dataset scale x" + std::to_string(train_ds.scale));
        }
        if (!(cp.model.config == mc)) {
            throw ConfigError("checkpoint model configuration differs from the run config");
        }
        if (!cp.progress) {
            throw ConfigError("checkpoint has no training progress to resume from");
        }
        if (cp.progress->rng_seed != cfg.train.rng_seed) {
            throw ConfigError("checkpoint was trained with a different rng_seed");
        }
        model = std::move(cp.model);
        opts.start_epoch = cp.progress->epoch;
        opts.adam = std::move(cp.progress->adam);
    } else {
        model = init_model(mc, cfg.train);
    }

    fs::create_directories(cfg.out_dir);
    TrainSummary summary;
    summary.checkpoint = cfg.out_dir / "checkpoint.json";
    summary.metrics_csv = cfg.out_dir / "metrics.csv";
    summary.final_epoch = opts.start_epoch;

    const bool fresh = !cfg.resume_from;
    std::ofstream csv(summary.metrics_csv, fresh ? std::ios::trunc : std::ios::app);
    if (!csv) {
        throw ConfigError("cannot write " + summary.metrics_csv.string());
    }
    if (fresh || fs::file_size(summary.metrics_csv) == 0) {
        csv << kEpochCsvHeader << '\n';
    }
    if (val_ds) {
        opts.validation = val_ds->samples;
    }

    bool have_initial = false;
    bool saved = false;
    opts.on_epoch = [&](const EpochLog &entry, const AnoVqcModel &m, const AdamState &adam) {
        csv << epoch_csv_row(entry) << '\n' << std::flush;
        if (!have_initial) {
            summary.initial_loss = entry.train_loss;
            have_initial = true;
        }
        summary.final_loss = entry.train_loss;
        summary.final_epoch = entry.epoch;
        log << "epoch " << entry.epoch << " train_loss " << format_metric(entry.train_loss);
        if (entry.validation) {
            log << " val_mse " << format_metric(entry.validation->mse) << " val_ssim "
                << format_metric(entry.validation->ssim);
        }
        log << '\n';
        const bool last = entry.epoch == cfg.train.epochs;
        if (entry.epoch > 0 && (last || entry.epoch % cfg.checkpoint_every == 0)) {
            save_checkpoint(summary.checkpoint,
                            Checkpoint{m, TrainingProgress{entry.epoch, cfg.train.rng_seed, adam}});
            saved = true;
        }
    };

    auto result = fit(std::move(model), train_ds.samples, cfg.train, opts);
    if (!saved) {
        // No epoch ran (epochs == 0 or already reached): persist the input model.
        save_checkpoint(summary.checkpoint,
                        Checkpoint{result.model, TrainingProgress{opts.start_epoch,
                                                                  cfg.train.rng_seed,
                                                                  result.adam}});
    }
    return summary;
}

std::string EvalResult::csv_row() const {
    return std::to_string(scale) + "," + std::to_string(k_local) + "," +
           format_metric(metrics.mse) + "," + format_metric(metrics.perceptual) + "," +
           format_metric(metrics.psnr) + "," + format_metric(metrics.ssim);
}

namespace {

struct Loaded {
    AnoVqcModel model;
    SrDataset dataset;
};

Loaded load_pair(const fs::path &checkpoint, const fs::path &dataset) {
    require_file(checkpoint, "checkpoint");
    require_file(dataset, "dataset");
    Loaded l{load_checkpoint(checkpoint).model, read_dataset(dataset)};
    const auto &hr = l.dataset.samples.front().hr;
    if (hr.height() != l.model.config.hr_height || hr.width() != l.model.config.hr_width) {
        throw ConfigError("checkpoint predicts " + std::to_string(l.model.config.hr_height) + "x" +
                          std::to_string(l.model.config.hr_width) + " but dataset scale x" +
                          std::to_string(l.dataset.scale) + " has " + std::to_string(hr.height()) +
                          "x" + std::to_string(hr.width()) + " targets");
    }
    check_dataset_shape(l.model.config, l.dataset.samples);
    return l;
}

} // namespace

EvalResult cmd_eval(const fs::path &checkpoint, const fs::path &dataset, std::ostream &out,
                    std::size_t num_threads) {
    const auto loaded = load_pair(checkpoint, dataset);
    EvalResult r{loaded.dataset.scale, loaded.model.config.k_local,
                 evaluate_dataset(loaded.model, loaded.dataset.samples, num_threads)};
    out << kEvalCsvHeader << '\n' << r.csv_row() << '\n';
    return r;
}

std::size_t cmd_infer(const fs::path &checkpoint, const fs::path &dataset, const fs::path &out_dir,
                      std::size_t count, std::ostream &log) {
    const auto loaded = load_pair(checkpoint, dataset);
    const auto &samples = loaded.dataset.samples;
    const std::size_t n = std::min(count, samples.size());
    fs::create_directories(out_dir);
    for (std::size_t i = 0; i < n; ++i) {
        const auto &s = samples[i];
        const auto pred = forward(loaded.model, s.lr.pixels());
        const auto stem = std::to_string(i);
        write_pgm(out_dir / (stem + "_lr.pgm"), s.lr.view());
        write_pgm(out_dir / (stem + "_pred.pgm"), ImageView{s.hr.height(), s.hr.width(), pred});
        write_pgm(out_dir / (stem + "_hr.pgm"), s.hr.view());
    }
    log << "wrote " << 3 * n << " images to " << out_dir.string() << '\n';
    return n;
}

} // namespace anovqc::cli
