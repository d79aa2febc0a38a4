#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rsofs/data.hpp"

namespace rsofs {

/// Majority label among the k Euclidean-nearest train rows. Distance ties go
/// to the lower row index, vote ties to the smaller class id.
int knn_predict(const Dataset& train, std::span<const double> instance,
                std::size_t k);

/// One-vs-rest counts for a single class.
struct ClassCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

struct ConfusionCounts {
  std::vector<ClassCounts> per_class;
  std::size_t total = 0;
  /// Classes occurring in the truth or the predictions.
  std::vector<bool> present;

  std::size_t correct() const;

  friend bool operator==(const ConfusionCounts&,
                         const ConfusionCounts&) = default;
};

struct Metrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

ConfusionCounts confusion_counts(std::span<const int> truth,
                                 std::span<const int> predicted,
                                 std::size_t num_classes);

// Single-class forms; a zero denominator yields 0.
double accuracy_of(const ClassCounts& c);
double precision_of(const ClassCounts& c);
double recall_of(const ClassCounts& c);
double f1_of(double precision, double recall);

/// The positive class reported for two-class problems.
inline constexpr int kPositiveClass = 1;

/// Two-class problems report the positive class directly; otherwise
/// precision and recall are macro-averaged over the present classes. F1 is
/// always the harmonic mean of the reported precision and recall.
Metrics compute_metrics(const ConfusionCounts& counts);

struct Evaluation {
  ConfusionCounts counts;
  Metrics metrics;
  std::vector<int> predictions;
};

Evaluation evaluate(const Dataset& train, const Dataset& test, std::size_t k);

}  // namespace rsofs
