#include "nestsim/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Result {
    int status;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int status = nestsim::cli::dispatch(args, out, err);
    return {status, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name)
{
    return std::filesystem::temp_directory_path() /
           ("nestsim_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + name);
}

std::string read(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string data_dir = NESTSIM_DATA_DIR;

} // namespace

TEST(Cli, VerifyTable1)
{
    const auto r = call({"verify-table1"});
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "pass max_abs_error=0\n");
    EXPECT_TRUE(r.err.empty());
}

TEST(Cli, VerifyTable1FailsOnTamperedFixture)
{
    auto text = read(data_dir + "/table1.csv");
    text.replace(text.find("13,5.0"), 6, "13,5.5");
    const auto path = temp_path("tampered.csv");
    std::ofstream(path) << text;
    const auto r = call({"verify-table1", "--fixture", path.string()});
    EXPECT_EQ(r.status, 1);
    EXPECT_EQ(r.out.rfind("fail max_abs_error=0.5 mismatches=1\n", 0), 0u) << r.out;
    EXPECT_NE(r.out.find("mismatch neuron=13 t=3 expected=5.5 actual=5"), std::string::npos);
    std::filesystem::remove(path);
}

TEST(Cli, Center)
{
    const auto r = call({"center", "--weights", "5,2,2,2,10,10"});
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "costs=4000,805,410,220,140,410,4000\nbest=5 cost=140\n");
}

TEST(Cli, Chain)
{
    const auto r = call({"chain", "--hops", "2,2"});
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "product=4 oracle=4\n");
}

TEST(Cli, Counter)
{
    const auto r = call({"counter", "--depth", "3"});
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "count level=1 tick=1\ncount level=2 tick=2\ncount level=3 tick=3\n"
                     "quiescent tick=5\n");
}

TEST(Cli, Layout)
{
    const auto r = call({"layout", "--trials", "50", "--seed", "7"});
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "layout seed=7 trials=50\ninward_shorter pass=50 fail=0\n"
                     "inward_reinforced pass=50 fail=0\n");
    const auto d = call({"layout"});
    EXPECT_EQ(d.out.rfind("layout seed=1 trials=50\n", 0), 0u);
}

TEST(Cli, SimulateToStdoutAndFile)
{
    const auto scenario = data_dir + "/table1.scenario";
    const auto to_stdout = call({"simulate", "--scenario", scenario});
    EXPECT_EQ(to_stdout.status, 0);
    EXPECT_NE(to_stdout.out.find("\n3,1,1,7.5\n"), std::string::npos);

    const auto path = temp_path("trace.csv");
    const auto to_file = call({"simulate", "--scenario", scenario, "--out", path.string()});
    EXPECT_EQ(to_file.status, 0);
    EXPECT_EQ(read(path), to_stdout.out);
    std::filesystem::remove(path);
}

TEST(Cli, UsageErrorsExitTwo)
{
    const std::vector<std::vector<std::string>> bad{
        {},
        {"frobnicate"},
        {"counter"},
        {"counter", "--depth", "0"},
        {"counter", "--depth", "-3"},
        {"chain", "--hops", "2,,2"},
        {"chain", "--hops", "2,0"},
        {"center", "--weights", "abc"},
        {"layout", "--trials", "0"},
        {"simulate", "--scenario", "/nonexistent/file.json"},
        {"verify-table1", "--fixture", "/nonexistent/fixture.csv"},
        {"counter", "--depth", "3", "chain", "--hops", "2"},
    };
    for (const auto& args : bad) {
        const auto r = call(args);
        EXPECT_EQ(r.status, 2) << (args.empty() ? "<none>" : args[0]);
        EXPECT_FALSE(r.err.empty());
        EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
    }
}

TEST(Cli, InvalidScenarioExitsTwo)
{
    const auto path = temp_path("bad.scenario");
    std::ofstream(path) << R"({"ensemble": {"nesting": "linear", "depth": 5, "pattern_size": 5,
        "excitatory_unit": 1.0, "inhibitory_weight": -0.1},
        "schedule": {"type": "staggered", "interval": 1}, "steps": 5, "mode": "scheduled"})";
    const auto r = call({"simulate", "--scenario", path.string()});
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.err.find("ValidationError"), std::string::npos);
    std::filesystem::remove(path);
}

TEST(Cli, HelpExitsZero)
{
    const auto r = call({"--help"});
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("verify-table1"), std::string::npos);
}
