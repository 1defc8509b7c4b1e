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

// anovqc: prepare | train | eval | infer | gradcheck

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "anovqc/errors.hpp"
#include "commands.hpp"
#include "gradcheck.hpp"

namespace {

namespace cli = anovqc::cli;

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Adaptive non-local observable VQC for image super-resolution"};
    app.require_subcommand(1);

    cli::PrepareArgs prep;
    std::size_t limit = 0;
    auto *prepare = app.add_subcommand("prepare", "Build an LR/HR dataset from MNIST IDX files");
    prepare->add_option("--images", prep.images, "IDX3 image file (optionally gzipped)")->required();
    prepare->add_option("--labels", prep.labels, "IDX1 label file (optionally gzipped)")->required();
    prepare->add_option("--scale", prep.scale, "SR factor: 3, 4 or 5")->required();
    auto *limit_opt = prepare->add_option("--limit", limit, "Random subset size");
    prepare->add_option("--seed", prep.seed, "Subset sampling seed");
    prepare->add_option("--out", prep.out, "Output dataset file")->required();

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    auto *train = app.add_subcommand("train", "Train a model from a JSON run config");
    train->add_option("--config", config_path, "Run config (JSON)")->required();
    train->add_option("--seed", seed, "Override rng_seed");
    train->add_option("--out", out_dir, "Override out_dir");

    std::string checkpoint;
    std::string dataset;
    std::optional<std::string> eval_out;
    auto *eval = app.add_subcommand("eval", "Average metrics of a checkpoint over a dataset");
    eval->add_option("--checkpoint", checkpoint)->required();
    eval->add_option("--dataset", dataset)->required();
    eval->add_option("--out", eval_out, "Also write the CSV report to this file");

    std::string infer_dir;
    std::size_t count = 3;
    auto *infer = app.add_subcommand("infer", "Write LR / prediction / HR images as PGM");
    infer->add_option("--checkpoint", checkpoint)->required();
    infer->add_option("--dataset", dataset)->required();
    infer->add_option("--out", infer_dir, "Output directory")->required();
    infer->add_option("--count", count, "Number of samples");

    cli::GradcheckOptions gc;
    auto *gradcheck = app.add_subcommand("gradcheck", "Cross-check the gradient engines");
    gradcheck->add_option("--seed", gc.seed);
    gradcheck->add_option("--models", gc.models, "Number of random models");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*prepare) {
            if (*limit_opt) {
                prep.limit = limit;
            }
            cli::cmd_prepare(prep, std::cout);
        } else if (*train) {
            cli::TrainOverrides ov;
            ov.seed = seed;
            if (out_dir) {
                ov.out_dir = *out_dir;
            }
            const auto summary = cli::cmd_train(cli::load_run_config(config_path), ov, std::cout);
            std::cout << "checkpoint: " << summary.checkpoint.string() << '\n';
        } else if (*eval) {
            if (eval_out) {
                std::ofstream f(*eval_out, std::ios::trunc);
                if (!f) {
                    throw anovqc::ConfigError("cannot write " + *eval_out);
                }
                const auto r = cli::cmd_eval(checkpoint, dataset, std::cout);
                f << cli::kEvalCsvHeader << '\n' << r.csv_row() << '\n';
            } else {
                cli::cmd_eval(checkpoint, dataset, std::cout);
            }
        } else if (*infer) {
            cli::cmd_infer(checkpoint, dataset, infer_dir, count, std::cout);
        } else if (*gradcheck) {
            const auto report = cli::cmd_gradcheck(gc, std::cout);
            return report.pass ? 0 : 3;
        }
    } catch (const anovqc::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return anovqc::exit_code_for(e);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
