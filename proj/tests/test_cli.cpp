#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli.hpp"
#include "hawkes/errors.hpp"

using namespace hawkes;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("hawkes_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::string simulate_example(const std::string& name) {
        const auto r = run_cli({"simulate", "--kernel", "exp", "--c0", "0.5", "--gamma", "0.5", "--beta",
                                "1", "--T", "1e4", "--seed", "7", "--out", path(name)});
        EXPECT_EQ(r.code, 0) << r.err;
        return path(name);
    }

    fs::path dir_;
};

}  // namespace

TEST(CliParsing, Orders) {
    EXPECT_EQ(cli::parse_orders("5"), std::vector<int>{5});
    EXPECT_EQ(cli::parse_orders("1:4"), (std::vector<int>{1, 2, 3, 4}));
    EXPECT_EQ(cli::parse_orders("2,4,8"), (std::vector<int>{2, 4, 8}));
    EXPECT_THROW(cli::parse_orders("4:1"), ParameterError);
    EXPECT_THROW(cli::parse_orders("a"), ParameterError);
    EXPECT_THROW(cli::parse_orders(""), ParameterError);
}

TEST(CliParsing, Mixture) {
    const auto m = cli::parse_mixture("0.4:0.5,0.6:4");
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m[1], (std::pair<double, double>{0.6, 4.0}));
    EXPECT_THROW(cli::parse_mixture("0.4"), ParameterError);
}

// =============================================================================
// simulate
// =============================================================================

TEST_F(CliTest, SimulateWritesStreamAndSidecar) {
    const auto file = simulate_example("s.txt");
    const std::string text = slurp(file);
    EXPECT_EQ(text.rfind("# hawkes-stream T=10000 seed=7\n", 0), 0u);
    const auto n = std::count(text.begin(), text.end(), '\n') - 1;
    EXPECT_NEAR(static_cast<double>(n), 1e4, 4.0 * std::sqrt(1e4) / 0.5);

    const auto meta = json::parse(slurp(file + ".json"));
    EXPECT_EQ(meta["gamma"], 0.5);
    EXPECT_EQ(meta["seed"], 7);
    EXPECT_EQ(meta["n_events"], n);
}

TEST_F(CliTest, SimulateIsByteIdenticalOnRerun) {
    const auto a = slurp(simulate_example("a.txt"));
    const auto b = slurp(simulate_example("b.txt"));
    EXPECT_EQ(a, b);
}

TEST_F(CliTest, SimulateRejectsNonStationaryGamma) {
    const auto r = run_cli({"simulate", "--c0", "0.5", "--gamma", "1.0", "--T", "100"});
    EXPECT_EQ(r.code, cli::kValidationError);
    EXPECT_NE(r.err.find("Gamma < 1"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("--gamma"), std::string::npos) << r.err;
}

TEST_F(CliTest, SimulateLaguerreKernelToStdout) {
    const auto r = run_cli({"simulate", "--kernel", "laguerre", "--c0", "1", "--alpha", "0.3,-0.1,0.05",
                            "--T", "50", "--seed", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("# hawkes-stream T=50 seed=3\n", 0), 0u);
}

TEST_F(CliTest, SimulateRejectsNegativeKernel) {
    const auto r = run_cli({"simulate", "--kernel", "laguerre", "--c0", "1", "--alpha", "0.3,-0.1", "--T", "50"});
    EXPECT_EQ(r.code, cli::kValidationError);
}

TEST_F(CliTest, MissingRequiredFlagIsUsageError) {
    const auto r = run_cli({"simulate", "--c0", "0.5", "--gamma", "0.5"});
    EXPECT_EQ(r.code, cli::kValidationError);
    EXPECT_NE(r.err.find("--T"), std::string::npos) << r.err;
    EXPECT_EQ(run_cli({}).code, cli::kValidationError);
    EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kValidationError);
}

// =============================================================================
// estimate
// =============================================================================

TEST_F(CliTest, EstimateRecoversBranchingRatio) {
    const auto file = simulate_example("s.txt");
    const auto r = run_cli({"estimate", file, "--basis", "laguerre", "--P", "3", "--beta", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = json::parse(r.out);
    EXPECT_NEAR(doc["gamma_hat"].get<double>(), 0.5, 0.1);
    EXPECT_EQ(doc["basis"]["P"], 3);
    EXPECT_EQ(doc["alpha_hat"].size(), 3u);
    EXPECT_EQ(run_cli({"estimate", "--in", file}).out, r.out);
}

TEST_F(CliTest, EstimateRejectsZeroOrder) {
    const auto file = simulate_example("s.txt");
    const auto r = run_cli({"estimate", file, "--P", "0"});
    EXPECT_EQ(r.code, cli::kValidationError);
    EXPECT_NE(r.err.find("--P"), std::string::npos) << r.err;
}

TEST_F(CliTest, EstimateFlagsIllConditionedErlangSystem) {
    const auto file = simulate_example("s.txt");
    const auto r = run_cli({"estimate", file, "--basis", "erlang", "--P", "14"});
    if (r.code == cli::kSuccess) {
        const auto doc = json::parse(r.out);
        EXPECT_FALSE(doc["warnings"].empty());
    } else {
        EXPECT_EQ(r.code, cli::kNumericalDegeneracy) << r.err;
    }
    EXPECT_EQ(run_cli({"estimate", file, "--basis", "erlang", "--P", "25"}).code, cli::kNumericalDegeneracy);
}

TEST_F(CliTest, EstimateMissingFileIsIoError) {
    EXPECT_EQ(run_cli({"estimate", path("absent.txt")}).code, cli::kIoError);
}

TEST_F(CliTest, EstimateMalformedFileIsValidationError) {
    std::ofstream(path("bad.txt")) << "not a stream\n";
    EXPECT_EQ(run_cli({"estimate", path("bad.txt")}).code, cli::kValidationError);
}

TEST_F(CliTest, EstimateWritesOutFile) {
    const auto file = simulate_example("s.txt");
    const auto r = run_cli({"estimate", file, "--out", path("est.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    EXPECT_NO_THROW(json::parse(slurp(path("est.json"))));
}

// =============================================================================
// asymptotics
// =============================================================================

TEST_F(CliTest, AsymptoticsPoissonGramIsIdentity) {
    const auto r = run_cli({"asymptotics", "--gamma", "0", "--beta", "1", "--lambda", "1", "--P", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = json::parse(r.out);
    const auto R = doc["R_star"].get<std::vector<std::vector<double>>>();
    ASSERT_EQ(R.size(), 5u);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) EXPECT_NEAR(R[i][j], i == j ? 1.0 : 0.0, 1e-8);
    EXPECT_TRUE(doc["closed_loop"]["is_hurwitz"].get<bool>());
}

TEST_F(CliTest, AsymptoticsStudyCsv) {
    const auto r = run_cli({"asymptotics", "--study", "--gamma", "0.5", "--beta", "1", "--lambda", "1",
                            "--P", "1:12", "--out", path("study.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream csv(slurp(path("study.csv")));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line.substr(0, 16), "P,cond_laguerre,");
    int rows = 0;
    while (std::getline(csv, line)) {
        ++rows;
        const auto c1 = line.find(',');
        const double cond = std::stod(line.substr(c1 + 1, line.find(',', c1 + 1) - c1 - 1));
        EXPECT_LE(cond, 9.0) << line;
    }
    EXPECT_EQ(rows, 12);
    const auto meta = json::parse(slurp(path("study.csv") + ".json"));
    EXPECT_EQ(meta["Gamma"], 0.5);
}

TEST_F(CliTest, AsymptoticsStudyToStdoutHasMetadataLine) {
    const auto r = run_cli({"asymptotics", "--study", "--gamma", "0.5", "--beta", "1", "--lambda", "1",
                            "--P", "2,4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("# {", 0), 0u);
}

TEST_F(CliTest, AsymptoticsMixtureAndErrors) {
    const auto ok = run_cli({"asymptotics", "--mix", "0.5:2,0.1:0.5", "--beta", "1", "--lambda", "1", "--P", "4"});
    ASSERT_EQ(ok.code, 0) << ok.err;
    EXPECT_NEAR(json::parse(ok.out)["gamma_star"].get<double>(), 0.45, 0.05);

    EXPECT_EQ(run_cli({"asymptotics", "--gamma", "1.2", "--beta", "1", "--lambda", "1", "--P", "3"}).code,
              cli::kValidationError);
    EXPECT_EQ(run_cli({"asymptotics", "--gamma", "0.5", "--beta", "1", "--lambda", "1", "--P", "1:3"}).code,
              cli::kValidationError);
    EXPECT_EQ(run_cli({"asymptotics", "--gamma", "0.5", "--beta", "1", "--lambda", "1", "--P", "30",
                       "--basis", "erlang"}).code,
              cli::kNumericalDegeneracy);
}
