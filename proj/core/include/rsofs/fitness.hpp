#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>

#include "rsofs/classify.hpp"
#include "rsofs/data.hpp"
#include "rsofs/feature_mask.hpp"

namespace rsofs {

struct FitnessValue {
  double accuracy = 0.0;
  std::size_t num_features = 0;
  /// accuracy - w * num_features / n_features
  double scalar = 0.0;

  friend bool operator==(const FitnessValue&, const FitnessValue&) = default;
};

double scalarize(double accuracy, std::size_t num_features,
                 std::size_t n_features, double weight);

struct ScoredMask {
  FeatureMask mask;
  FitnessValue fitness;

  friend bool operator==(const ScoredMask&, const ScoredMask&) = default;
};

/// Total order: higher scalar, then fewer features, then the
/// lexicographically smaller mask.
bool ranks_before(const ScoredMask& a, const ScoredMask& b);

using FitnessFn = std::function<FitnessValue(const FeatureMask&)>;

/// Memo table keyed by exact mask. Safe for concurrent use.
class FitnessCache {
 public:
  FitnessCache();
  ~FitnessCache();
  FitnessCache(FitnessCache&&) noexcept;
  FitnessCache& operator=(FitnessCache&&) noexcept;

  std::optional<FitnessValue> find(const FeatureMask& mask) const;
  /// Returns false when the mask was already stored.
  bool insert(const FeatureMask& mask, const FitnessValue& value);

  std::size_t size() const;
  std::size_t hits() const;
  void clear();

 private:
  struct State;
  std::unique_ptr<State> state_;
};

/// Projects both partitions onto `mask`, scores KNN on the test side and
/// memoizes the result in `cache`. Throws EmptyMask.
FitnessValue wrapper_fitness(const FeatureMask& mask, const SplitDataset& data,
                             std::size_t knn_k, double weight,
                             FitnessCache& cache);

/// The objective consumed by the optimizers: a fitness function behind a
/// per-run cache, with an optional known upper bound for early stopping.
class FitnessOracle {
 public:
  explicit FitnessOracle(FitnessFn fn,
                         std::optional<double> ceiling = std::nullopt);

  FitnessValue operator()(const FeatureMask& mask) const;

  /// Distinct masks evaluated so far (cache misses).
  std::size_t evaluations() const { return cache_.size(); }
  std::size_t cache_hits() const { return cache_.hits(); }
  std::optional<double> ceiling() const noexcept { return ceiling_; }

 private:
  FitnessFn fn_;
  std::optional<double> ceiling_;
  mutable FitnessCache cache_;
};

/// Wrapper objective over a split. Its ceiling is the scalar of a perfect
/// classifier using a single feature, 1 - w / n.
FitnessOracle make_wrapper_oracle(const SplitDataset& data, std::size_t knn_k,
                                  double weight);

}  // namespace rsofs
