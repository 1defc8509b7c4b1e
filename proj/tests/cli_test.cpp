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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "anovqc/checkpoint.hpp"
#include "anovqc/errors.hpp"
#include "commands.hpp"
#include "gradcheck.hpp"
#include "testing.hpp"

namespace anovqc::cli {
namespace {

namespace fs = std::filesystem;

struct Workspace {
    testing::TempDir dir{"cli"};
    testing::IdxPair idx;
    fs::path train;
    fs::path test;

    explicit Workspace(std::size_t train_count = 8, std::size_t scale = 3) {
        idx = testing::write_synthetic_idx(dir.path(), 40, 7);
        std::ostringstream sink;
        cmd_prepare(PrepareArgs{idx.images, idx.labels, scale, train_count, 1, dir / "train.bin"},
                    sink);
        cmd_prepare(PrepareArgs{idx.images, idx.labels, scale, 4, 2, dir / "test.bin"}, sink);
        train = dir / "train.bin";
        test = dir / "test.bin";
    }

    [[nodiscard]] fs::path write_config(const std::string &name, const std::string &body) const {
        const auto p = dir / name;
        std::ofstream(p) << body;
        return p;
    }
};

RunConfig quick_config(const Workspace &ws, std::size_t epochs, const std::string &out) {
    auto cfg = parse_run_config(R"({"train_dataset": "train.bin", "layers": 1, "batch_size": 4,
                                    "learning_rate": 0.05, "rng_seed": 5})",
                                ws.dir.path());
    cfg.train.epochs = epochs;
    cfg.out_dir = ws.dir / out;
    return cfg;
}

TEST(Prepare, WritesRequestedSamples) {
    Workspace ws;
    const auto ds = read_dataset(ws.train);
    EXPECT_EQ(ds.scale, 3u);
    EXPECT_EQ(ds.samples.size(), 8u);
    EXPECT_EQ(ds.samples[0].hr.height(), 12u);
}

TEST(Prepare, CorruptMagicNamesExpectedValue) {
    Workspace ws;
    auto bytes = read_file_bytes(ws.idx.images);
    bytes[2] = 0x09;
    testing::write_bytes(ws.dir / "bad", bytes);
    std::ostringstream sink;
    try {
        cmd_prepare(PrepareArgs{ws.dir / "bad", ws.idx.labels, 3, {}, 0, ws.dir / "o.bin"}, sink);
        FAIL() << "expected FormatError";
    } catch (const FormatError &e) {
        EXPECT_NE(std::string(e.what()).find("0x00000803"), std::string::npos) << e.what();
    }
}

TEST(Prepare, ZeroLimitIsEmptyDataset) {
    Workspace ws;
    std::ostringstream sink;
    try {
        cmd_prepare(PrepareArgs{ws.idx.images, ws.idx.labels, 3, 0, 0, ws.dir / "o.bin"}, sink);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError &e) {
        EXPECT_NE(std::string(e.what()).find("empty dataset"), std::string::npos);
    }
}

TEST(RunConfigParse, DefaultsAndPaths) {
    const auto cfg = parse_run_config(R"({"train_dataset": "a/b.bin"})", "/base");
    EXPECT_EQ(cfg.train_dataset, fs::path("/base/a/b.bin"));
    EXPECT_EQ(cfg.out_dir, fs::path("/base/run"));
    EXPECT_EQ(cfg.model.layers, 4u);
    EXPECT_EQ(cfg.model.k_local, 2u);
    EXPECT_EQ(cfg.train.batch_size, 32u);
    EXPECT_EQ(cfg.train.c2, 0.0);
    const auto abs = parse_run_config(R"({"train_dataset": "/x.bin", "encoding_axis": "X"})", "/b");
    EXPECT_EQ(abs.train_dataset, fs::path("/x.bin"));
    EXPECT_EQ(abs.model.encoding_axes, std::vector<PauliAxis>{PauliAxis::X});
}

TEST(RunConfigParse, RejectsTyposAndBadValues) {
    EXPECT_THROW((void)parse_run_config(R"({"train_dataset": "a", "lerning_rate": 1})", "/"),
                 ConfigError);
    EXPECT_THROW((void)parse_run_config(R"({"epochs": 3})", "/"), ConfigError);
    EXPECT_THROW((void)parse_run_config(R"({"train_dataset": "a", "epochs": "x"})", "/"),
                 ConfigError);
    EXPECT_THROW((void)parse_run_config(R"({"train_dataset": "a", "c1": 0})", "/"), ConfigError);
    EXPECT_THROW((void)parse_run_config(R"({"train_dataset": "a", "encoding_axis": "Q"})", "/"),
                 ConfigError);
    EXPECT_THROW((void)parse_run_config("[1]", "/"), ConfigError);
    EXPECT_THROW((void)parse_run_config("{", "/"), ConfigError);
}

TEST(Train, WritesCheckpointAndCsv) {
    Workspace ws;
    std::ostringstream log;
    const auto s = cmd_train(quick_config(ws, 2, "run"), {}, log);
    EXPECT_TRUE(fs::exists(s.checkpoint));
    EXPECT_EQ(s.final_epoch, 2u);
    const auto csv = testing::read_text(s.metrics_csv);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "epoch,train_loss,val_mse,val_psnr,val_ssim");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4); // header + epochs 0..2
    const auto cp = load_checkpoint(s.checkpoint);
    ASSERT_TRUE(cp.progress.has_value());
    EXPECT_EQ(cp.progress->epoch, 2u);
}

TEST(Train, ResumeContinuesDeterministically) {
    Workspace ws;
    std::ostringstream log;
    const auto full = cmd_train(quick_config(ws, 3, "full"), {}, log);

    const auto first = cmd_train(quick_config(ws, 1, "part"), {}, log);
    auto resume = quick_config(ws, 3, "part");
    resume.resume_from = first.checkpoint;
    const auto rest = cmd_train(resume, {}, log);
    EXPECT_EQ(rest.final_epoch, 3u);

    EXPECT_EQ(testing::read_text(rest.checkpoint), testing::read_text(full.checkpoint));
    EXPECT_EQ(testing::read_text(rest.metrics_csv), testing::read_text(full.metrics_csv));
}

TEST(Train, ResumeRejectsMismatchedScale) {
    Workspace ws;
    std::ostringstream log;
    const auto s = cmd_train(quick_config(ws, 1, "run"), {}, log);

    Workspace other(8, 4);
    auto cfg = quick_config(other, 2, "run4");
    cfg.resume_from = s.checkpoint;
    EXPECT_THROW((void)cmd_train(cfg, {}, log), ConfigError);
    EXPECT_FALSE(fs::exists(other.dir / "run4"));
}

TEST(Train, ResumeRejectsDifferentSeed) {
    Workspace ws;
    std::ostringstream log;
    const auto s = cmd_train(quick_config(ws, 1, "run"), {}, log);
    auto cfg = quick_config(ws, 2, "run");
    cfg.resume_from = s.checkpoint;
    TrainOverrides ov;
    ov.seed = 99;
    EXPECT_THROW((void)cmd_train(cfg, ov, log), ConfigError);
}

TEST(Train, ConfigScaleMustMatchDataset) {
    Workspace ws;
    auto cfg = quick_config(ws, 1, "run");
    cfg.scale = 5;
    std::ostringstream log;
    EXPECT_THROW((void)cmd_train(cfg, {}, log), ConfigError);
}

TEST(Train, MissingDataset) {
    Workspace ws;
    auto cfg = quick_config(ws, 1, "run");
    cfg.train_dataset = ws.dir / "missing.bin";
    std::ostringstream log;
    EXPECT_THROW((void)cmd_train(cfg, {}, log), ConfigError);
}

TEST(Train, ValidationColumnsFilled) {
    Workspace ws;
    auto cfg = quick_config(ws, 1, "run");
    cfg.val_dataset = ws.test;
    std::ostringstream log;
    const auto s = cmd_train(cfg, {}, log);
    const auto csv = testing::read_text(s.metrics_csv);
    EXPECT_EQ(csv.find("nan"), std::string::npos) << csv;
}

TEST(Eval, OwnTrainingSetMatchesFinalLoss) {
    Workspace ws;
    std::ostringstream log;
    const auto s = cmd_train(quick_config(ws, 2, "run"), {}, log);
    std::ostringstream out;
    const auto r = cmd_eval(s.checkpoint, ws.train, out);
    EXPECT_NEAR(r.metrics.mse, s.final_loss, 1e-9);
    EXPECT_EQ(r.scale, 3u);
    EXPECT_EQ(r.k_local, 2u);
    EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "scale,k_local,mse,lpips_proxy,psnr,ssim");
}

TEST(Eval, IdentityObservableCheckpoint) {
    Workspace ws;
    ModelConfig mc;
    mc.layers = 1;
    auto model = AnoVqcModel::zeros(mc);
    for (auto &h : model.heads) {
        h.params = HermitianParams::identity(2);
    }
    save_checkpoint(ws.dir / "id.json", Checkpoint{model, std::nullopt});
    std::ostringstream out;
    const auto r = cmd_eval(ws.dir / "id.json", ws.test, out);
    EXPECT_TRUE(std::isfinite(r.metrics.mse));
    EXPECT_TRUE(std::isfinite(r.metrics.ssim));
    for (const double y : forward(model, read_dataset(ws.test).samples[0].lr.pixels())) {
        EXPECT_NEAR(y, 1.0, 1e-12);
    }
}

TEST(Eval, ScaleMismatch) {
    Workspace ws;
    Workspace ws4(4, 4);
    std::ostringstream log;
    const auto s = cmd_train(quick_config(ws, 0, "run"), {}, log);
    EXPECT_THROW((void)cmd_eval(s.checkpoint, ws4.test, log), ConfigError);
    EXPECT_THROW((void)cmd_infer(s.checkpoint, ws4.test, ws.dir / "img", 1, log), ConfigError);
}

TEST(Infer, WritesThreePgmsPerSample) {
    Workspace ws;
    std::ostringstream log;
    const auto s = cmd_train(quick_config(ws, 0, "run"), {}, log);
    EXPECT_EQ(cmd_infer(s.checkpoint, ws.test, ws.dir / "img", 3, log), 3u);
    std::size_t files = 0;
    for (const auto &e : fs::directory_iterator(ws.dir / "img")) {
        (void)e;
        ++files;
    }
    EXPECT_EQ(files, 9u);
    for (int i = 0; i < 3; ++i) {
        const auto lr = testing::read_text(ws.dir / "img" / (std::to_string(i) + "_lr.pgm"));
        const auto pred = testing::read_text(ws.dir / "img" / (std::to_string(i) + "_pred.pgm"));
        const auto hr = testing::read_text(ws.dir / "img" / (std::to_string(i) + "_hr.pgm"));
        EXPECT_EQ(lr.substr(0, 11), "P5\n4 4\n255\n");
        EXPECT_EQ(lr.size(), 11u + 16u);
        EXPECT_EQ(pred.substr(0, 13), "P5\n12 12\n255\n");
        EXPECT_EQ(pred.size(), 13u + 144u);
        EXPECT_EQ(hr.size(), 13u + 144u);
    }
    // count beyond the dataset stops at its size
    EXPECT_EQ(cmd_infer(s.checkpoint, ws.test, ws.dir / "all", 100, log), 4u);
}

TEST(Gradcheck, DefaultSeedPasses) {
    std::ostringstream out;
    const auto r = cmd_gradcheck(GradcheckOptions{}, out);
    EXPECT_TRUE(r.pass) << out.str();
    EXPECT_LE(r.max_abs_single_qubit, 1e-9);
    EXPECT_NE(out.str().find("adjoint vs param-shift"), std::string::npos) << out.str();
}

TEST(Gradcheck, InjectedFaultIsReportedWithIndex) {
    GradcheckOptions opt;
    opt.fault = GradcheckOptions::Fault{2, 1e-3};
    std::ostringstream out;
    const auto r = cmd_gradcheck(opt, out);
    EXPECT_FALSE(r.pass);
    ASSERT_FALSE(r.failures.empty());
    EXPECT_EQ(r.failures.front().flat_index, 2u);
    EXPECT_NE(out.str().find("parameter 2"), std::string::npos) << out.str();
}

#ifdef ANOVQC_CLI_PATH
int run(const std::string &args) {
    const std::string cmd = std::string(ANOVQC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(ExitCodes, StableContract) {
    Workspace ws;
    EXPECT_EQ(run("gradcheck --models 2"), 0);
    EXPECT_EQ(run("frobnicate"), 1);
    EXPECT_EQ(run("prepare --images x"), 1);
    auto bytes = read_file_bytes(ws.idx.images);
    bytes.pop_back();
    testing::write_bytes(ws.dir / "short", bytes);
    EXPECT_EQ(run("prepare --images " + (ws.dir / "short").string() + " --labels " +
                  ws.idx.labels.string() + " --scale 3 --out " + (ws.dir / "o.bin").string()),
              2);
    EXPECT_EQ(run("prepare --images " + ws.idx.images.string() + " --labels " +
                  ws.idx.labels.string() + " --scale 7 --out " + (ws.dir / "o.bin").string()),
              1);
    const auto cfg = ws.write_config("c.json", R"({"train_dataset": "train.bin", "typo": 1})");
    EXPECT_EQ(run("train --config " + cfg.string()), 1);
}
#endif

} // namespace
} // namespace anovqc::cli
