#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "synth.hpp"

#include "spatialkit/cli.hpp"
#include "spatialkit/io.hpp"
#include "spatialkit/serialize.hpp"

using namespace spatialkit;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("spatialkit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        std::mt19937 rng(60);
        gray_ = path("gray.png");
        save_image(synth::textured(64, 48, rng), gray_);
        blank_ = path("blank.png");
        save_image(ImageBuffer(64, 48, ColorSpace::RGB), blank_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path path(const std::string& name) const { return dir_ / name; }

    int run(std::vector<std::string> args) {
        args.insert(args.begin(), "spatialkit");
        out_.str({});
        err_.str({});
        return cli::run(args, out_, err_);
    }

    fs::path write_config(const std::string& text) const {
        const fs::path p = path("run.cfg");
        std::ofstream(p) << text;
        return p;
    }

    fs::path dir_, gray_, blank_;
    std::ostringstream out_, err_;
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST_F(CliTest, QuantizeProducesAtMostEightLevels) {
    const fs::path out = path("q.png");
    ASSERT_EQ(run({"quantize", gray_.string(), out.string(), "--preset", "paper8"}), 0) << err_.str();
    const ImageBuffer q = load_image(out);
    const std::set<std::uint8_t> levels(q.data().begin(), q.data().end());
    EXPECT_LE(levels.size(), 8u);
    for (auto v : levels) EXPECT_TRUE(std::set<int>({10, 20, 50, 70, 100, 140, 180, 200}).count(v)) << int(v);
}

TEST_F(CliTest, CompareIdenticalIsHundred) {
    ASSERT_EQ(run({"compare", gray_.string(), gray_.string()}), 0) << err_.str();
    const json r = json::parse(out_.str());
    EXPECT_NEAR(r["similarity"]["blended"].get<double>(), 100.0, 1e-9);
    EXPECT_EQ(r["similarity"]["w"].get<double>(), 0.5);
}

TEST_F(CliTest, CueAngleOnBlankNamesStage) {
    EXPECT_EQ(run({"cue", "angle", blank_.string()}), 2);
    EXPECT_NE(err_.str().find("cue angle"), std::string::npos) << err_.str();
}

TEST_F(CliTest, UnknownSubcommandIsUsageError) {
    EXPECT_EQ(run({"frobnicate", gray_.string()}), 1);
    EXPECT_NE(err_.str().find("Usage"), std::string::npos) << err_.str();
}

TEST_F(CliTest, UnknownFlagIsUsageError) {
    EXPECT_EQ(run({"sharpen", gray_.string(), path("s.png").string(), "--bogus", "1"}), 1);
    EXPECT_FALSE(err_.str().empty());
}

TEST_F(CliTest, HelpExitsZero) { EXPECT_EQ(run({"--help"}), 0); }

TEST_F(CliTest, OutOfRangeParameterIsUsageError) {
    EXPECT_EQ(run({"pipeline", "forward", gray_.string(), path("f.png").string(), "--alpha", "0.9"}), 1);
    EXPECT_NE(err_.str().find("alpha"), std::string::npos);
    EXPECT_FALSE(fs::exists(path("f.png")));
}

TEST_F(CliTest, MissingInputIsProcessingError) {
    EXPECT_EQ(run({"sharpen", path("nope.png").string(), path("s.png").string()}), 2);
}

TEST_F(CliTest, EveryImageCommandWritesOutput) {
    const std::vector<std::vector<std::string>> cmds = {
        {"equalize", gray_.string(), path("e.png").string(), "--mode", "ycrcb"},
        {"brighten", gray_.string(), path("b.png").string(), "--v", "40"},
        {"sharpen", gray_.string(), path("s.png").string()},
        {"filter", gray_.string(), path("m.png").string(), "--kind", "median", "--size", "5"},
        {"pipeline", "reverse", gray_.string(), path("r.png").string()},
        {"features", "edges", gray_.string(), path("edges.png").string()},
    };
    for (const auto& c : cmds) ASSERT_EQ(run(c), 0) << c[0] << ": " << err_.str();
    for (const char* f : {"e.png", "b.png", "s.png", "m.png", "r.png", "edges.png"}) EXPECT_TRUE(fs::exists(path(f))) << f;
}

TEST_F(CliTest, ReportRecordsEffectiveParameters) {
    const fs::path rep = path("fwd.json");
    ASSERT_EQ(run({"pipeline", "forward", gray_.string(), path("f.png").string(), "--gamma", "0.3", "--report",
                   rep.string()}),
              0)
        << err_.str();
    const json r = json::parse(slurp(rep));
    EXPECT_EQ(r["command"], "pipeline");
    EXPECT_EQ(r["params"]["alpha"].get<double>(), 0.45);
    EXPECT_EQ(r["params"]["gamma"].get<double>(), 0.3);
    EXPECT_EQ(r["params"]["beta"].get<double>(), 1.8);
}

TEST_F(CliTest, IdenticalRunsAreByteIdentical) {
    const std::vector<std::string> cmd = {"pipeline", "forward", gray_.string(), path("a.png").string(), "--report",
                                          path("a.json").string()};
    ASSERT_EQ(run(cmd), 0);
    const std::string img = slurp(path("a.png")), rep = slurp(path("a.json"));
    ASSERT_EQ(run(cmd), 0);
    EXPECT_EQ(slurp(path("a.png")), img);
    EXPECT_EQ(slurp(path("a.json")), rep);
}

TEST_F(CliTest, CompareRejectsWeightOutsideUnitInterval) {
    EXPECT_EQ(run({"compare", gray_.string(), gray_.string(), "--w", "1.5"}), 1);
    EXPECT_NE(err_.str().find("[0,1]"), std::string::npos) << err_.str();
}

// --- config files ----------------------------------------------------------------

TEST_F(CliTest, EmptyConfigNamesMissingInput) {
    try {
        cli::parse_config(write_config(""));
        FAIL();
    } catch (const cli::ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("'input'"), std::string::npos) << e.what();
    }
}

TEST_F(CliTest, ConfigWeightOutOfRangeNamesInterval) {
    const fs::path cfg = write_config("command = compare\ninput = " + gray_.string() + "\ninput2 = " +
                                      gray_.string() + "\nw = 1.5\n");
    try {
        cli::parse_config(cfg);
        FAIL();
    } catch (const cli::ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("[0,1]"), std::string::npos) << e.what();
    }
}

TEST_F(CliTest, ConfigRejectsUnknownKeys) {
    const fs::path cfg = write_config("command = sharpen\ninput = " + gray_.string() + "\nsharpness = 3\n");
    try {
        cli::parse_config(cfg);
        FAIL();
    } catch (const cli::ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("sharpness"), std::string::npos);
    }
}

TEST_F(CliTest, ConfigTypeErrorNamesKeyAndType) {
    const fs::path cfg = write_config("command = brighten\ninput = " + gray_.string() + "\nv = bright\n");
    try {
        cli::parse_config(cfg);
        FAIL();
    } catch (const cli::ConfigError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("'v'"), std::string::npos) << msg;
        EXPECT_NE(msg.find("integer"), std::string::npos) << msg;
    }
}

TEST_F(CliTest, ConfigFillsDefaults) {
    const fs::path cfg = write_config("# sharpen only\ncommand = sharpen\ninput = " + gray_.string() +
                                      "\noutput = " + path("s.png").string() + "\n");
    const cli::CommandConfig c = cli::parse_config(cfg);
    EXPECT_EQ(c.w, 0.5);
    EXPECT_EQ(c.sigma, 0.5);
    EXPECT_EQ(c.alpha, 0.45);
    EXPECT_EQ(c.effective_gamma(), 0.26);
    EXPECT_EQ(c.effective_grid().size(), GridSpec::forward_default().size());
}

TEST_F(CliTest, ConfigAcceptsFullForwardRanges) {
    const fs::path cfg = write_config("command = pipeline\naction = tune\ndirection = forward\ninput = " +
                                      gray_.string() + "\ninput2 = " + gray_.string() +
                                      "\ngrid.alpha = 0.05, 0.5, 0.05\ngrid.gamma = 0.15, 0.35, 0.01\n"
                                      "grid.beta = 1.6, 2.1, 0.05\n");
    const cli::CommandConfig c = cli::parse_config(cfg);
    const GridSpec g = c.effective_grid();
    EXPECT_EQ(g.axes[0].min, 0.05);
    EXPECT_EQ(g.axes[0].max, 0.5);
    EXPECT_EQ(g.axes[1].max, 0.35);
    EXPECT_EQ(g.axes[2].min, 1.6);
    EXPECT_EQ(g.size(), 2310u);
}

TEST_F(CliTest, ConfigRejectsGridOutsideRangesUnlessOverridden) {
    const std::string base = "command = pipeline\naction = tune\ninput = " + gray_.string() + "\ninput2 = " +
                             gray_.string() + "\ngrid.alpha = 0.05, 0.9, 0.05\n";
    EXPECT_THROW(cli::parse_config(write_config(base)), cli::ConfigError);
    EXPECT_NO_THROW(cli::parse_config(write_config(base + "override_ranges = true\n")));
}

TEST_F(CliTest, ConfigDrivesRun) {
    const fs::path out = path("cfg_out.png");
    const fs::path cfg = write_config("command = filter\nkind = gaussian\nsize = 5\ninput = " + gray_.string() +
                                      "\noutput = " + out.string() + "\n");
    ASSERT_EQ(run({"--config", cfg.string()}), 0) << err_.str();
    ASSERT_EQ(run({"filter", gray_.string(), path("flag_out.png").string(), "--kind", "gaussian", "--size", "5"}), 0);
    EXPECT_EQ(slurp(out), slurp(path("flag_out.png")));
}

TEST_F(CliTest, BadConfigIsUsageError) {
    EXPECT_EQ(run({"--config", write_config("command = sharpen\n").string()}), 1);
    EXPECT_NE(err_.str().find("'input'"), std::string::npos);
}

TEST_F(CliTest, GridFileLoads) {
    const fs::path grid = path("grid.json");
    std::ofstream(grid) << R"([{"name": "gamma", "min": 3.0, "max": 3.2, "step": 0.1}])";
    const fs::path rep = path("tune.json");
    ASSERT_EQ(run({"pipeline", "tune", gray_.string(), gray_.string(), "--direction", "reverse", "--grid",
                   grid.string(), "--report", rep.string()}),
              0)
        << err_.str();
    const json r = json::parse(slurp(rep));
    EXPECT_EQ(r["tune"]["log"].size(), 3u);
}
