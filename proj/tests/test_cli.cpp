#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "photon_gun/cli.hpp"

namespace fs = std::filesystem;

namespace {

class TempDir {
public:
    TempDir()
    {
        static int counter = 0;
        path_ = fs::temp_directory_path() /
                ("photon_gun_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "photon-gun");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = photon_gun::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::pair<double, double>> read_two_columns(const fs::path& p)
{
    std::ifstream f(p);
    std::string line;
    std::vector<std::pair<double, double>> rows;
    bool header = false;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            header = true;
            continue;
        }
        const auto comma = line.find(',');
        rows.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    return rows;
}

} // namespace

TEST(Cli, UsageErrorsExitWithTwo)
{
    TempDir d;
    const auto out = d.path().string();
    EXPECT_EQ(run({"--out", out, "dos", "--periods", "0"}).code, 2);
    EXPECT_EQ(run({"--out", out, "stirap"}).code, 2);
    EXPECT_EQ(run({"--out", out, "rate", "--periods", "5", "--target", "1.0"}).code, 2);
    EXPECT_EQ(run({"--out", out, "kerr", "--off", "1", "--on", "0.5"}).code, 2);
    EXPECT_EQ(run({"--out", out, "--format", "xml", "dispersion"}).code, 2);
    EXPECT_EQ(run({"--out", out}).code, 2);
    EXPECT_EQ(run({"--out", out, "bogus"}).code, 2);
}

TEST(Cli, UniformStackGivesFlatSpectra)
{
    TempDir d;
    const auto r = run({"--out", d.path().string(), "dos", "--n1", "1", "--n2", "1", "--periods",
                        "5", "--points", "199", "--normalization", "vacuum"});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const char* name : {"dos.csv", "ldos.csv"}) {
        const auto rows = read_two_columns(d.path() / name);
        ASSERT_EQ(rows.size(), 199u);
        for (const auto& [w, v] : rows) EXPECT_NEAR(v, 1.0, 1e-9) << name << ' ' << w;
    }
    EXPECT_TRUE(fs::exists(d.path() / "run.json"));
    const auto summary = nlohmann::json::parse(slurp(d.path() / "summary.json"));
    EXPECT_TRUE(summary["result"]["dos_peak"].is_null());
}

TEST(Cli, DosWritesPreambleAndSummary)
{
    TempDir d;
    const auto r = run({"--out", d.path().string(), "dos", "--periods", "10", "--points", "999"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto text = slurp(d.path() / "ldos.csv");
    EXPECT_EQ(text.rfind("# config: ", 0), 0u);
    EXPECT_NE(text.find("normalization=low_frequency"), std::string::npos);
    EXPECT_NE(text.find("stack_hash="), std::string::npos);
    const auto run_json = nlohmann::json::parse(slurp(d.path() / "run.json"));
    EXPECT_EQ(run_json["subcommand"], "dos");
    const auto summary = nlohmann::json::parse(slurp(d.path() / "summary.json"));
    EXPECT_EQ(summary["config"], run_json);
    EXPECT_GT(summary["result"]["ldos_peak"]["rho_peak"].get<double>(), 1.0);
}

TEST(Cli, JsonFormat)
{
    TempDir d;
    const auto r = run({"--out", d.path().string(), "--format", "json", "dos", "--periods", "4",
                        "--points", "99"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(slurp(d.path() / "dos.json"));
    EXPECT_EQ(j["result"]["omega"].size(), j["result"]["value"].size());
}

TEST(Cli, RepeatedRunsAreByteIdentical)
{
    const std::vector<std::vector<std::string>> commands{
        {"rate", "--periods", "12", "--cycles", "2000", "--no-periods-search"},
        {"stirap", "--tau", "1", "--gamma3", "1", "--points", "51"},
        {"dispersion", "--points", "301"},
        {"dos", "--periods", "6", "--points", "501"},
    };
    for (const auto& cmd : commands) {
        TempDir a, b;
        auto args_a = cmd;
        args_a.insert(args_a.begin(), {"--out", a.path().string(), "--seed", "9"});
        auto args_b = cmd;
        args_b.insert(args_b.begin(), {"--out", b.path().string(), "--seed", "9"});
        ASSERT_EQ(run(args_a).code, 0) << cmd[0];
        ASSERT_EQ(run(args_b).code, 0) << cmd[0];
        std::size_t files = 0;
        for (const auto& entry : fs::directory_iterator(a.path())) {
            const auto other = b.path() / entry.path().filename();
            ASSERT_TRUE(fs::exists(other));
            EXPECT_EQ(slurp(entry.path()), slurp(other)) << entry.path().filename();
            ++files;
        }
        EXPECT_GE(files, 2u);
        EXPECT_TRUE(fs::exists(a.path() / "run.json"));
    }
}

TEST(Cli, SeedChangesPhotonStream)
{
    TempDir a, b;
    ASSERT_EQ(run({"--out", a.path().string(), "--seed", "1", "rate", "--periods", "12", "--cycles",
                   "500", "--no-periods-search"})
                  .code,
              0);
    ASSERT_EQ(run({"--out", b.path().string(), "--seed", "2", "rate", "--periods", "12", "--cycles",
                   "500", "--no-periods-search"})
                  .code,
              0);
    EXPECT_NE(slurp(a.path() / "events.csv"), slurp(b.path() / "events.csv"));
}

TEST(Cli, StackFileInput)
{
    TempDir d;
    const auto file = d.path() / "stack.json";
    std::ofstream(file) << R"({"layers":[{"n":2,"d":0.7853981633974483}],"emitter":null})";
    const auto out = d.path() / "out";
    const auto r = run({"--out", out.string(), "dos", "--stack", file.string(), "--emitter", "none",
                        "--points", "99"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(fs::exists(out / "dos.csv"));

    std::ofstream(d.path() / "bad.json") << R"({"layers":[{"n":0.2,"d":1}]})";
    EXPECT_EQ(run({"--out", out.string(), "dos", "--stack", (d.path() / "bad.json").string()}).code,
              2);
}

TEST(Cli, StirapSweepOutputs)
{
    TempDir d;
    const auto r = run({"--out", d.path().string(), "stirap", "--tau", "1", "--gamma3", "1",
                        "--sweep", "--sweep-points", "7", "--points", "21"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(fs::exists(d.path() / "trajectory.csv"));
    EXPECT_TRUE(fs::exists(d.path() / "sweep.json"));
    const auto s = nlohmann::json::parse(slurp(d.path() / "summary.json"));
    EXPECT_GT(s["result"]["final_p2"].get<double>(), 0.95);
}
