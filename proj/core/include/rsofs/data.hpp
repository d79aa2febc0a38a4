#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rsofs/feature_mask.hpp"

namespace rsofs {

/// Numeric attribute matrix (row-major) with integer-coded class labels.
///
/// Labels lie in [0, num_classes()). Row subsets and projections keep the
/// class count of their parent so per-class statistics stay aligned.
/// Instances are immutable after construction and safe to share between
/// threads.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::string name, std::vector<double> values,
          std::size_t num_attributes, std::vector<int> labels,
          std::vector<std::string> attribute_names = {},
          std::vector<std::string> class_names = {});

  const std::string& name() const noexcept { return name_; }
  std::size_t num_instances() const noexcept { return labels_.size(); }
  std::size_t num_attributes() const noexcept { return num_attributes_; }
  std::size_t num_classes() const noexcept { return class_names_.size(); }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * num_attributes_, num_attributes_};
  }
  double at(std::size_t i, std::size_t j) const {
    return values_[i * num_attributes_ + j];
  }
  int label(std::size_t i) const { return labels_[i]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<const int> labels() const noexcept { return labels_; }
  const std::vector<std::string>& attribute_names() const noexcept {
    return attribute_names_;
  }
  const std::vector<std::string>& class_names() const noexcept {
    return class_names_;
  }

  /// Number of classes that actually occur in this instance set.
  std::size_t distinct_label_count() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::string name_;
  std::vector<double> values_;
  std::size_t num_attributes_ = 0;
  std::vector<int> labels_;
  std::vector<std::string> attribute_names_;
  std::vector<std::string> class_names_;
};

struct SplitDataset {
  Dataset train;
  Dataset test;
  /// Row indices into the source dataset, ascending.
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;
  std::uint64_t split_seed = 0;
  double train_fraction = 0.8;
  std::vector<std::string> warnings;
};

/// Selects the label column by 0-based index (negative counts from the end)
/// or by header name.
struct ColumnSelector {
  std::variant<std::ptrdiff_t, std::string> value = std::ptrdiff_t{-1};

  static ColumnSelector last() { return {}; }
  static ColumnSelector index(std::ptrdiff_t i) { return {i}; }
  static ColumnSelector named(std::string name) { return {std::move(name)}; }
  /// Integers are indices, anything else is a name.
  static ColumnSelector parse(const std::string& text);
};

enum class HeaderMode { Auto, Present, Absent };

struct CsvOptions {
  ColumnSelector label;
  HeaderMode header = HeaderMode::Auto;
  char delimiter = ',';
};

/// Reads a delimited file. Numeric columns parse as reals, categorical ones
/// are coded by first appearance; unparseable or missing cells are imputed
/// with the column mean (numeric) or mode (categorical).
Dataset load_csv(const std::filesystem::path& path,
                 const CsvOptions& options = {});
Dataset parse_csv(std::istream& in, std::string name,
                  const CsvOptions& options = {});

/// Rescales every attribute to [0,1]; constant columns become 0.
Dataset min_max_normalize(const Dataset& d);

/// Per-class proportional holdout. A class with a single instance goes to the
/// train side and a warning is recorded.
SplitDataset stratified_split(const Dataset& d, double train_fraction,
                              std::uint64_t seed);

/// Keeps the columns selected by `mask`. Throws EmptyMask or
/// MaskLengthMismatch.
Dataset project(const Dataset& d, const FeatureMask& mask);

Dataset select_rows(const Dataset& d, std::span<const std::size_t> rows);

}  // namespace rsofs
