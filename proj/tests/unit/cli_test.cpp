#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "rsofs/bench.hpp"
#include "test_support.hpp"

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run_cli(const std::string& args) {
  const auto out_path = std::filesystem::temp_directory_path() /
                        ("rsofs_cli_" + std::to_string(::getpid()) + ".txt");
  const std::string cmd = std::string(RSOFS_CLI) + " " + args + " > " + out_path.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out_path);
  Outcome o{WIFEXITED(status) ? WEXITSTATUS(status) : -1,
            std::string(std::istreambuf_iterator<char>(in), {})};
  std::filesystem::remove(out_path);
  return o;
}

std::string data(const std::string& name) { return rsofs::fixtures::data_path(name); }

std::size_t line_count(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST(Cli, RunWritesReport) {
  const auto o = run_cli("run --data " + data("iris") + " --algo rso,none --seeds 1,2 --max-iter 2 --no-time");
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out.substr(0, o.out.find('\n')), rsofs::kReportHeader);
  EXPECT_EQ(line_count(o.out), 1u + 2u * 3u);
}

TEST(Cli, FlagsOverrideConfigFile) {
  rsofs::fixtures::TempFile cfg("cfg", "data=" + data("iris") + "\nseeds=1..5\nmax-iter=1\nalgo=bso\n");
  const auto o = run_cli("run --config " + cfg.path() + " --seeds 3 --no-time");
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(line_count(o.out), 3u);
  EXPECT_NE(o.out.find("iris,bso,3,"), std::string::npos);
}

TEST(Cli, OutputFileAndMarkdown) {
  const auto path = (std::filesystem::temp_directory_path() / "rsofs_cli_report.md").string();
  const auto o = run_cli("run --data " + data("iris") + " --algo none --seeds 1 --format markdown --out " + path);
  EXPECT_EQ(o.code, 0);
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(path);
  const std::string text{std::istreambuf_iterator<char>(in), {}};
  EXPECT_EQ(text.rfind("| dataset |", 0), 0u);
  std::filesystem::remove(path);
}

TEST(Cli, ConfigErrorsExitOne) {
  EXPECT_EQ(run_cli("run --data " + data("iris") + " --k zero").code, 1);
  EXPECT_EQ(run_cli("run --data " + data("iris") + " --algo gwo").code, 1);
  EXPECT_EQ(run_cli("run --algo rso").code, 1);
  EXPECT_EQ(run_cli("run --bogus").code, 1);
  rsofs::fixtures::TempFile cfg("cfg", "gamma=3\n");
  EXPECT_EQ(run_cli("run --data " + data("iris") + " --config " + cfg.path()).code, 1);
  EXPECT_EQ(run_cli("sweep --data " + data("iris") + " --param gamma").code, 1);
}

TEST(Cli, PartialFailureExitsTwo) {
  const auto o = run_cli("run --data /nonexistent/ghost.csv," + data("iris") +
                         " --algo none --seeds 1 --no-time");
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.out.find("ghost,none,1,NA"), std::string::npos);
  EXPECT_NE(o.out.find("iris,none,mean"), std::string::npos);
}

TEST(Cli, Sweep) {
  const auto o = run_cli("sweep --data " + data("iris") + " --param max_iter --values 1,2 --seeds 1 --no-time");
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out.rfind("max_iter,mean_accuracy_pct,mean_time_seconds\n1,", 0), 0u);
  EXPECT_EQ(line_count(o.out), 3u);
}

TEST(Cli, Help) { EXPECT_EQ(run_cli("--help").code, 0); }
