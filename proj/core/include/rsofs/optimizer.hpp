#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rsofs/classify.hpp"
#include "rsofs/data.hpp"
#include "rsofs/feature_mask.hpp"
#include "rsofs/fitness.hpp"

namespace rsofs {

class QTable;

struct EvalReport {
  Metrics metrics;
  std::size_t num_features = 0;
  double time_seconds = 0.0;
};

/// Outcome of a search over a generic fitness oracle.
struct SearchRun {
  ScoredMask best;
  /// Best scalar fitness after each iteration.
  std::vector<double> trajectory;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  std::vector<std::string> warnings;
};

struct OptimizerResult {
  FeatureMask best_mask;
  EvalReport report;
  std::vector<double> trajectory;
  std::size_t iterations = 0;
  /// Distinct fitness evaluations, net of cache hits.
  std::size_t fitness_evaluations = 0;
  std::vector<std::string> warnings;
  /// Final learned table, RSO only.
  std::shared_ptr<const QTable> q_table;
};

/// Equality on everything except wall time.
bool same_outcome(const OptimizerResult& a, const OptimizerResult& b);

bool is_non_decreasing(const std::vector<double>& trajectory);

/// Final report for a finished search: re-scores the best mask on the split.
OptimizerResult make_result(const SearchRun& run, const SplitDataset& data,
                            std::size_t knn_k, double seconds);

/// Scores `mask` on the split with KNN and fills an EvalReport (time 0).
EvalReport evaluate_mask(const FeatureMask& mask, const SplitDataset& data,
                         std::size_t knn_k);

}  // namespace rsofs
