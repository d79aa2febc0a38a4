#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsofs/baselines.hpp"
#include "rsofs/bso.hpp"
#include "rsofs/data.hpp"
#include "rsofs/optimizer.hpp"
#include "rsofs/rl.hpp"

namespace rsofs {

enum class Algorithm { Rso, Bso, None, Random, Bpso };
enum class ReportFormat { Csv, Markdown };

std::string_view to_string(Algorithm a) noexcept;
Algorithm parse_algorithm(std::string_view name);

struct RunConfig {
  std::vector<std::string> datasets;
  std::vector<Algorithm> algorithms;
  std::vector<std::uint64_t> seeds;
  std::size_t knn_k = 5;
  double train_fraction = 0.8;
  BSOParams bso;
  RLParams rl;
  double feature_weight = 0.01;
  /// Defaults to the RSO evaluation budget.
  std::optional<std::size_t> random_budget;
  BPSOParams bpso;
  CsvOptions csv;
  std::string output;
  ReportFormat format = ReportFormat::Csv;
  /// Concurrent (dataset, algorithm, seed) runs.
  std::size_t threads = 1;
  /// When false the time column is written as 0 so reports are byte-stable.
  bool record_time = true;
  /// When set, each RSO run writes its Q-table to
  /// `<prefix>_<dataset>_<seed>.csv`.
  std::string qtable_prefix;

  /// Throws InvalidArgument unless there is at least one dataset, algorithm
  /// and seed and every parameter is in range.
  void validate() const;
};

/// Applies one `key=value` setting; keys are the long CLI flag names without
/// dashes (e.g. "max-iter"). Throws UnknownParameter / InvalidArgument.
void apply_setting(RunConfig& cfg, std::string_view key,
                   std::string_view value);

/// Flat key=value text, '#' starts a comment.
void apply_config_text(RunConfig& cfg, std::string_view text);

/// "1..10", "3", or "1,2,5".
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

struct ReportRow {
  std::string dataset;
  std::string algorithm;
  /// Empty for per-(dataset, algorithm) mean rows.
  std::optional<std::uint64_t> seed;
  bool failed = false;
  double accuracy_pct = 0.0;
  double precision_pct = 0.0;
  double recall_pct = 0.0;
  double f1_pct = 0.0;
  double num_features = 0.0;
  double time_seconds = 0.0;

  bool is_aggregate() const noexcept { return !seed.has_value(); }

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

inline constexpr std::string_view kReportHeader =
    "dataset,algorithm,seed,accuracy_pct,precision_pct,recall_pct,f1_pct,"
    "num_features,time_seconds";

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows);
void write_report_markdown(std::ostream& out,
                           const std::vector<ReportRow>& rows);
std::vector<ReportRow> read_report_csv(std::istream& in);

struct RunRecord {
  std::string dataset;
  Algorithm algorithm = Algorithm::Rso;
  std::uint64_t seed = 0;
  std::size_t num_attributes = 0;
  OptimizerResult result;
};

struct BenchmarkResult {
  std::vector<ReportRow> rows;
  /// Successful runs in row order.
  std::vector<RunRecord> runs;
  std::vector<std::string> errors;

  bool partial_failure() const noexcept { return !errors.empty(); }
};

/// Runs every (dataset, algorithm, seed) triple. Rows follow input order,
/// each (dataset, algorithm) group followed by its mean row. Datasets that
/// fail to load yield failed rows instead of aborting.
BenchmarkResult run_benchmark(const RunConfig& cfg);

struct SweepPoint {
  double value = 0.0;
  double mean_accuracy_pct = 0.0;
  double mean_time_seconds = 0.0;
};

bool is_integer_parameter(std::string_view name);
/// Integers 1..10 or reals 0.0..1.0 in steps of 0.1.
std::vector<double> default_sweep_values(std::string_view parameter);
/// "start:stop:step" or a comma list.
std::vector<double> parse_sweep_values(std::string_view text);

std::vector<SweepPoint> parameter_sweep(const RunConfig& cfg,
                                        std::string_view parameter,
                                        const std::vector<double>& values);

void write_sweep_csv(std::ostream& out, std::string_view parameter,
                     const std::vector<SweepPoint>& points);

}  // namespace rsofs
