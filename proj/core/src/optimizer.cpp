#include "rsofs/optimizer.hpp"

#include <algorithm>

#include "rsofs/data.hpp"

namespace rsofs {

bool same_outcome(const OptimizerResult& a, const OptimizerResult& b) {
  return a.best_mask == b.best_mask && a.report.metrics == b.report.metrics &&
         a.report.num_features == b.report.num_features &&
         a.trajectory == b.trajectory && a.iterations == b.iterations &&
         a.fitness_evaluations == b.fitness_evaluations &&
         a.warnings == b.warnings;
}

bool is_non_decreasing(const std::vector<double>& trajectory) {
  return std::is_sorted(trajectory.begin(), trajectory.end());
}

EvalReport evaluate_mask(const FeatureMask& mask, const SplitDataset& data,
                         std::size_t knn_k) {
  const auto ev =
      evaluate(project(data.train, mask), project(data.test, mask), knn_k);
  EvalReport r;
  r.metrics = ev.metrics;
  r.num_features = mask.popcount();
  return r;
}

OptimizerResult make_result(const SearchRun& run, const SplitDataset& data,
                            std::size_t knn_k, double seconds) {
  OptimizerResult r;
  r.best_mask = run.best.mask;
  r.report = evaluate_mask(run.best.mask, data, knn_k);
  r.report.time_seconds = seconds;
  r.trajectory = run.trajectory;
  r.iterations = run.iterations;
  r.fitness_evaluations = run.evaluations;
  r.warnings = run.warnings;
  return r;
}

}  // namespace rsofs
