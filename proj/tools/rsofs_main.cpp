// rsofs: feature-selection benchmark runner.
//
//   rsofs run   --data iris.csv,wine.csv --algo rso,bso --seeds 1..10 --out report.csv
//   rsofs sweep --param lr --values 0:1:0.1 --data iris.csv
//
// Exit codes: 0 success, 1 configuration error, 2 some datasets failed.

#include <CLI11.hpp>

#include <deque>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rsofs/bench.hpp"
#include "rsofs/error.hpp"

namespace {

constexpr int kConfigError = 1;
constexpr int kPartialFailure = 2;

// Flag values kept as text, replayed through apply_setting after the config
// file so that flags win.
struct FlagSet {
  std::deque<std::pair<std::string, std::optional<std::string>>> values;
  std::vector<std::string> data;
  bool no_time = false;
  std::string config;

  std::optional<std::string>& slot(const std::string& key) {
    return values.emplace_back(key, std::nullopt).second;
  }
};

void add_run_flags(CLI::App& cmd, FlagSet& f) {
  cmd.add_option("--config", f.config, "key=value settings file; flags override it");
  cmd.add_option("--data", f.data, "dataset CSV files")->delimiter(',');
  cmd.add_option("--algo", f.slot("algo"), "rso,bso,none,random,bpso (default rso)");
  cmd.add_option("--seeds", f.slot("seeds"), "1..10, 1,2,3 or a single seed (default 1..10)");
  cmd.add_option("--k", f.slot("k"), "KNN neighbours (default 5)");
  cmd.add_option("--train-frac", f.slot("train-frac"), "train share of each class (default 0.8)");
  cmd.add_option("--flip", f.slot("flip"), "search-region flip parameter (default 5)");
  cmd.add_option("--chance-max", f.slot("chance-max"), "stagnant steps before diversifying (default 5)");
  cmd.add_option("--max-iter", f.slot("max-iter"), "colony iterations (default 10)");
  cmd.add_option("--num-bees", f.slot("num-bees"), "bees per iteration (default 8)");
  cmd.add_option("--ls-iter", f.slot("ls-iter"), "local search / episode length (default 10)");
  cmd.add_option("--lr", f.slot("lr"), "Q-learning rate (default 0.9)");
  cmd.add_option("--alpha", f.slot("alpha"), "discount (default 0.2)");
  cmd.add_option("--beta", f.slot("beta"), "exploration probability (default 0.1)");
  cmd.add_option("--w", f.slot("w"), "feature-count penalty weight (default 0.01)");
  cmd.add_option("--out", f.slot("out"), "output file (default stdout)");
  cmd.add_option("--format", f.slot("format"), "csv or markdown (default csv)");
  cmd.add_option("--label", f.slot("label"), "label column: index (negative from the end) or name");
  cmd.add_option("--threads", f.slot("threads"), "concurrent runs (default 1)");
  cmd.add_option("--bee-threads", f.slot("bee-threads"), "threads per colony step (default 1)");
  cmd.add_option("--random-budget", f.slot("random-budget"), "draws for the random baseline");
  cmd.add_option("--qtable-dump", f.slot("qtable-dump"), "write RSO Q-tables to <prefix>_<dataset>_<seed>.csv");
  cmd.add_flag("--no-time", f.no_time, "write 0 in the time column for byte-stable reports");
}

rsofs::RunConfig build_config(const FlagSet& f) {
  rsofs::RunConfig cfg;
  cfg.algorithms = {rsofs::Algorithm::Rso};
  cfg.seeds = rsofs::parse_seed_list("1..10");
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) {
      throw rsofs::Error(rsofs::ErrorCode::FileNotFound, "cannot read config " + f.config);
    }
    const std::string text{std::istreambuf_iterator<char>(in), {}};
    rsofs::apply_config_text(cfg, text);
  }
  if (!f.data.empty()) cfg.datasets = f.data;
  for (const auto& [key, value] : f.values) {
    if (value) rsofs::apply_setting(cfg, key, *value);
  }
  if (f.no_time) cfg.record_time = false;
  cfg.validate();
  return cfg;
}

template <typename Writer>
void emit(const std::string& path, Writer&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw rsofs::Error(rsofs::ErrorCode::InvalidArgument, "cannot write " + path);
  write(out);
}

int do_run(const FlagSet& flags) {
  const auto cfg = build_config(flags);
  const auto result = rsofs::run_benchmark(cfg);
  emit(cfg.output, [&](std::ostream& out) {
    if (cfg.format == rsofs::ReportFormat::Markdown) {
      rsofs::write_report_markdown(out, result.rows);
    } else {
      rsofs::write_report_csv(out, result.rows);
    }
  });
  for (const auto& e : result.errors) std::cerr << "rsofs: " << e << '\n';
  return result.partial_failure() ? kPartialFailure : 0;
}

int do_sweep(const FlagSet& flags, const std::string& param, const std::string& values) {
  const auto cfg = build_config(flags);
  const auto points = rsofs::parameter_sweep(
      cfg, param,
      values.empty() ? rsofs::default_sweep_values(param) : rsofs::parse_sweep_values(values));
  emit(cfg.output, [&](std::ostream& out) { rsofs::write_sweep_csv(out, param, points); });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wrapper feature selection with bee swarm and Q-learning search"};
  app.require_subcommand(1);

  FlagSet run_flags;
  auto* run = app.add_subcommand("run", "benchmark algorithms over datasets and seeds");
  add_run_flags(*run, run_flags);

  FlagSet sweep_flags;
  std::string param;
  std::string values;
  auto* sweep = app.add_subcommand("sweep", "vary one parameter and report mean accuracy and time");
  add_run_flags(*sweep, sweep_flags);
  sweep->add_option("--param", param,
                    "flip, chance_max, max_iter, num_bees, ls_iter, lr, alpha or beta")
      ->required();
  sweep->add_option("--values", values, "start:stop:step or a comma list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*run) return do_run(run_flags);
    return do_sweep(sweep_flags, param, values);
  } catch (const rsofs::Error& e) {
    std::cerr << "rsofs: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "rsofs: " << e.what() << '\n';
    return kConfigError;
  }
}
