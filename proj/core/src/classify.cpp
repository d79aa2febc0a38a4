#include "rsofs/classify.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "rsofs/error.hpp"

namespace rsofs {

int knn_predict(const Dataset& train, std::span<const double> instance,
                std::size_t k) {
  const std::size_t n = train.num_instances();
  if (n == 0) throw Error(ErrorCode::EmptyTrain, "train partition is empty");
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  if (k > n) {
    throw Error(ErrorCode::KTooLarge, "k=" + std::to_string(k) +
                                          " exceeds train size " +
                                          std::to_string(n));
  }
  if (instance.size() != train.num_attributes()) {
    throw Error(ErrorCode::AttributeMismatch,
                "instance has " + std::to_string(instance.size()) +
                    " attributes, train has " +
                    std::to_string(train.num_attributes()));
  }

  // Squared distance preserves the ordering; pairs sort by (distance, row).
  std::vector<std::pair<double, std::size_t>> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = train.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double diff = row[j] - instance[j];
      s += diff * diff;
    }
    dist[i] = {s, i};
  }
  std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k - 1),
                   dist.end());

  std::vector<std::size_t> votes(train.num_classes(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    ++votes[static_cast<std::size_t>(train.label(dist[i].second))];
  }
  // max_element returns the first maximum, i.e. the smallest class id.
  return static_cast<int>(std::max_element(votes.begin(), votes.end()) -
                          votes.begin());
}

std::size_t ConfusionCounts::correct() const {
  std::size_t c = 0;
  for (const auto& pc : per_class) c += pc.tp;
  return c;
}

ConfusionCounts confusion_counts(std::span<const int> truth,
                                 std::span<const int> predicted,
                                 std::size_t num_classes) {
  if (truth.size() != predicted.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "truth and prediction lengths differ");
  }
  ConfusionCounts out;
  out.per_class.assign(num_classes, {});
  out.present.assign(num_classes, false);
  out.total = truth.size();
  std::vector<std::size_t> true_count(num_classes, 0), pred_count(num_classes, 0);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const auto t = static_cast<std::size_t>(truth[i]);
    const auto p = static_cast<std::size_t>(predicted[i]);
    if (t >= num_classes || p >= num_classes) {
      throw Error(ErrorCode::InvalidArgument, "label outside class range");
    }
    ++true_count[t];
    ++pred_count[p];
    if (t == p) ++out.per_class[t].tp;
    out.present[t] = true;
    out.present[p] = true;
  }
  for (std::size_t c = 0; c < num_classes; ++c) {
    auto& pc = out.per_class[c];
    pc.fp = pred_count[c] - pc.tp;
    pc.fn = true_count[c] - pc.tp;
    pc.tn = out.total - pc.tp - pc.fp - pc.fn;
  }
  return out;
}

namespace {
double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}
}  // namespace

double accuracy_of(const ClassCounts& c) {
  return ratio(c.tp + c.tn, c.tp + c.tn + c.fp + c.fn);
}
double precision_of(const ClassCounts& c) { return ratio(c.tp, c.tp + c.fp); }
double recall_of(const ClassCounts& c) { return ratio(c.tp, c.tp + c.fn); }

double f1_of(double precision, double recall) {
  if (precision + recall <= 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

Metrics compute_metrics(const ConfusionCounts& counts) {
  Metrics m;
  m.accuracy = ratio(counts.correct(), counts.total);
  if (counts.per_class.size() == 2) {
    const auto& pos = counts.per_class[kPositiveClass];
    m.precision = precision_of(pos);
    m.recall = recall_of(pos);
  } else {
    double p = 0.0, r = 0.0;
    std::size_t classes = 0;
    for (std::size_t c = 0; c < counts.per_class.size(); ++c) {
      if (!counts.present[c]) continue;
      p += precision_of(counts.per_class[c]);
      r += recall_of(counts.per_class[c]);
      ++classes;
    }
    if (classes > 0) {
      m.precision = p / static_cast<double>(classes);
      m.recall = r / static_cast<double>(classes);
    }
  }
  m.f1 = f1_of(m.precision, m.recall);
  return m;
}

Evaluation evaluate(const Dataset& train, const Dataset& test, std::size_t k) {
  if (train.num_instances() == 0) {
    throw Error(ErrorCode::EmptyTrain, "train partition is empty");
  }
  if (test.num_instances() == 0) {
    throw Error(ErrorCode::EmptyTest, "test partition is empty");
  }
  if (train.num_attributes() != test.num_attributes()) {
    throw Error(ErrorCode::AttributeMismatch,
                "train has " + std::to_string(train.num_attributes()) +
                    " attributes, test has " +
                    std::to_string(test.num_attributes()));
  }
  Evaluation ev;
  ev.predictions.resize(test.num_instances());
  for (std::size_t i = 0; i < test.num_instances(); ++i) {
    ev.predictions[i] = knn_predict(train, test.row(i), k);
  }
  const std::size_t classes = std::max(train.num_classes(), test.num_classes());
  ev.counts = confusion_counts(test.labels(), ev.predictions, classes);
  ev.metrics = compute_metrics(ev.counts);
  return ev;
}

}  // namespace rsofs
