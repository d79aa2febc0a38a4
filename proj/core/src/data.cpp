#include "rsofs/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <unordered_map>

#include "rsofs/error.hpp"
#include "rsofs/rng.hpp"

namespace rsofs {

Dataset::Dataset(std::string name, std::vector<double> values,
                 std::size_t num_attributes, std::vector<int> labels,
                 std::vector<std::string> attribute_names,
                 std::vector<std::string> class_names)
    : name_(std::move(name)),
      values_(std::move(values)),
      num_attributes_(num_attributes),
      labels_(std::move(labels)),
      attribute_names_(std::move(attribute_names)),
      class_names_(std::move(class_names)) {
  if (values_.size() != labels_.size() * num_attributes_) {
    throw Error(ErrorCode::InvalidArgument,
                "feature matrix size does not match rows x attributes");
  }
  if (attribute_names_.empty()) {
    for (std::size_t j = 0; j < num_attributes_; ++j) {
      attribute_names_.push_back("a" + std::to_string(j));
    }
  } else if (attribute_names_.size() != num_attributes_) {
    throw Error(ErrorCode::InvalidArgument, "attribute name count mismatch");
  }
  int max_label = -1;
  for (int l : labels_) {
    if (l < 0) throw Error(ErrorCode::InvalidArgument, "negative label");
    max_label = std::max(max_label, l);
  }
  if (class_names_.empty()) {
    for (int c = 0; c <= max_label; ++c) class_names_.push_back(std::to_string(c));
  } else if (static_cast<int>(class_names_.size()) <= max_label) {
    throw Error(ErrorCode::InvalidArgument, "label outside class name range");
  }
}

std::size_t Dataset::distinct_label_count() const {
  return std::set<int>(labels_.begin(), labels_.end()).size();
}

ColumnSelector ColumnSelector::parse(const std::string& text) {
  std::ptrdiff_t idx = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), idx);
  if (ec == std::errc() && ptr == text.data() + text.size()) return index(idx);
  return named(text);
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(std::string_view line, char delim) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delim) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::optional<double> parse_number(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

bool is_missing_token(std::string_view s) {
  return s.empty() || s == "?" || s == "NA" || s == "na" || s == "N/A";
}

struct RawRow {
  std::vector<std::string> cells;
  std::size_t line = 0;
};

}  // namespace

Dataset parse_csv(std::istream& in, std::string name, const CsvOptions& options) {
  std::vector<RawRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    rows.push_back({split_fields(line, options.delimiter), line_no});
  }
  if (rows.empty()) throw Error(ErrorCode::EmptyDataset, name + " has no rows");

  const std::size_t ncols = rows.front().cells.size();
  for (const auto& r : rows) {
    if (r.cells.size() != ncols) {
      throw Error(ErrorCode::MalformedRow,
                  name + ": line " + std::to_string(r.line) + " has " +
                      std::to_string(r.cells.size()) + " fields, expected " +
                      std::to_string(ncols),
                  r.line);
    }
  }

  // Column kinds are judged on rows after the first, so a header row does
  // not skew them.
  auto numeric_columns = [&](std::size_t body_begin) {
    std::vector<bool> numeric(ncols, false);
    for (std::size_t j = 0; j < ncols; ++j) {
      std::size_t parsed = 0;
      std::size_t considered = 0;
      for (std::size_t i = body_begin; i < rows.size(); ++i) {
        const auto& cell = rows[i].cells[j];
        ++considered;
        if (parse_number(cell)) ++parsed;
      }
      numeric[j] = considered > 0 && 2 * parsed > considered;
    }
    return numeric;
  };

  bool has_header = false;
  switch (options.header) {
    case HeaderMode::Present: has_header = true; break;
    case HeaderMode::Absent: has_header = false; break;
    case HeaderMode::Auto: {
      if (std::holds_alternative<std::string>(options.label.value)) {
        has_header = true;
        break;
      }
      const auto numeric = numeric_columns(1);
      for (std::size_t j = 0; j < ncols; ++j) {
        if (numeric[j] && !parse_number(rows.front().cells[j])) {
          has_header = true;
          break;
        }
      }
      break;
    }
  }

  std::vector<std::string> header;
  if (has_header) header = rows.front().cells;
  const std::size_t body_begin = has_header ? 1 : 0;
  if (rows.size() <= body_begin) {
    throw Error(ErrorCode::EmptyDataset, name + " has no data rows");
  }

  std::size_t label_col = 0;
  if (const auto* idx = std::get_if<std::ptrdiff_t>(&options.label.value)) {
    const auto n = static_cast<std::ptrdiff_t>(ncols);
    const std::ptrdiff_t resolved = *idx < 0 ? n + *idx : *idx;
    if (resolved < 0 || resolved >= n) {
      throw Error(ErrorCode::MissingLabelColumn,
                  name + ": label column index " + std::to_string(*idx) +
                      " out of range");
    }
    label_col = static_cast<std::size_t>(resolved);
  } else {
    const auto& wanted = std::get<std::string>(options.label.value);
    auto it = std::find(header.begin(), header.end(), wanted);
    if (it == header.end()) {
      throw Error(ErrorCode::MissingLabelColumn,
                  name + ": no column named '" + wanted + "'");
    }
    label_col = static_cast<std::size_t>(it - header.begin());
  }
  if (ncols < 2) {
    throw Error(ErrorCode::EmptyDataset, name + " has no attribute columns");
  }

  const std::size_t n_rows = rows.size() - body_begin;
  const std::size_t n_attr = ncols - 1;
  const auto numeric = numeric_columns(body_begin);

  std::vector<double> values(n_rows * n_attr, 0.0);
  std::vector<std::string> attr_names;
  std::size_t a = 0;
  for (std::size_t j = 0; j < ncols; ++j) {
    if (j == label_col) continue;
    attr_names.push_back(has_header ? header[j] : "a" + std::to_string(a));
    if (numeric[j]) {
      double sum = 0.0;
      std::size_t count = 0;
      std::vector<std::optional<double>> parsed(n_rows);
      for (std::size_t i = 0; i < n_rows; ++i) {
        parsed[i] = parse_number(rows[body_begin + i].cells[j]);
        if (parsed[i]) {
          sum += *parsed[i];
          ++count;
        }
      }
      const double mean = sum / static_cast<double>(count);
      for (std::size_t i = 0; i < n_rows; ++i) {
        values[i * n_attr + a] = parsed[i].value_or(mean);
      }
    } else {
      std::unordered_map<std::string, int> codes;
      std::vector<std::size_t> freq;
      std::vector<int> coded(n_rows, -1);
      for (std::size_t i = 0; i < n_rows; ++i) {
        const auto& cell = rows[body_begin + i].cells[j];
        if (is_missing_token(cell)) continue;
        auto [it, inserted] =
            codes.emplace(cell, static_cast<int>(codes.size()));
        if (inserted) freq.push_back(0);
        ++freq[static_cast<std::size_t>(it->second)];
        coded[i] = it->second;
      }
      // Mode; ties go to the earliest-appearing value.
      int mode = 0;
      for (std::size_t c = 0; c < freq.size(); ++c) {
        if (freq[c] > freq[static_cast<std::size_t>(mode)]) mode = static_cast<int>(c);
      }
      for (std::size_t i = 0; i < n_rows; ++i) {
        values[i * n_attr + a] = static_cast<double>(coded[i] >= 0 ? coded[i] : mode);
      }
    }
    ++a;
  }

  std::unordered_map<std::string, int> label_codes;
  std::vector<std::string> class_names;
  std::vector<int> labels(n_rows);
  for (std::size_t i = 0; i < n_rows; ++i) {
    const auto& r = rows[body_begin + i];
    const auto& cell = r.cells[label_col];
    if (is_missing_token(cell)) {
      throw Error(ErrorCode::MalformedRow,
                  name + ": line " + std::to_string(r.line) + " has no label",
                  r.line);
    }
    auto [it, inserted] =
        label_codes.emplace(cell, static_cast<int>(label_codes.size()));
    if (inserted) class_names.push_back(cell);
    labels[i] = it->second;
  }
  if (class_names.size() < 2) {
    throw Error(ErrorCode::SingleClassDataset,
                name + " has a single class '" + class_names.front() + "'");
  }

  return Dataset(std::move(name), std::move(values), n_attr, std::move(labels),
                 std::move(attr_names), std::move(class_names));
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FileNotFound, path.string());
  return parse_csv(in, path.stem().string(), options);
}

Dataset min_max_normalize(const Dataset& d) {
  const std::size_t n = d.num_instances();
  const std::size_t m = d.num_attributes();
  std::vector<double> out(d.values().begin(), d.values().end());
  for (std::size_t j = 0; j < m; ++j) {
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = d.at(i, j);
      if (i == 0 || v < lo) lo = v;
      if (i == 0 || v > hi) hi = v;
    }
    const double range = hi - lo;
    for (std::size_t i = 0; i < n; ++i) {
      out[i * m + j] = range > 0.0 ? (d.at(i, j) - lo) / range : 0.0;
    }
  }
  return Dataset(d.name(), std::move(out), m,
                 std::vector<int>(d.labels().begin(), d.labels().end()),
                 d.attribute_names(), d.class_names());
}

Dataset select_rows(const Dataset& d, std::span<const std::size_t> rows) {
  const std::size_t m = d.num_attributes();
  std::vector<double> values;
  values.reserve(rows.size() * m);
  std::vector<int> labels;
  labels.reserve(rows.size());
  for (std::size_t r : rows) {
    auto src = d.row(r);
    values.insert(values.end(), src.begin(), src.end());
    labels.push_back(d.label(r));
  }
  return Dataset(d.name(), std::move(values), m, std::move(labels),
                 d.attribute_names(), d.class_names());
}

SplitDataset stratified_split(const Dataset& d, double train_fraction,
                              std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "train_fraction must lie strictly between 0 and 1");
  }
  SplitDataset split;
  split.split_seed = seed;
  split.train_fraction = train_fraction;

  std::vector<std::vector<std::size_t>> by_class(d.num_classes());
  for (std::size_t i = 0; i < d.num_instances(); ++i) {
    by_class[static_cast<std::size_t>(d.label(i))].push_back(i);
  }

  Rng rng(derive_seed(seed, {0x5eed}));
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& idx = by_class[c];
    if (idx.empty()) continue;
    if (idx.size() == 1) {
      split.train_indices.push_back(idx.front());
      split.warnings.push_back("ClassTooSmall: class '" + d.class_names()[c] +
                               "' has a single instance; kept in train");
      continue;
    }
    for (std::size_t i = idx.size() - 1; i > 0; --i) {
      std::swap(idx[i], idx[rng.uniform_index(i + 1)]);
    }
    const auto n_c = static_cast<double>(idx.size());
    const auto n_train = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::llround(n_c * train_fraction)), 1,
        idx.size() - 1);
    split.train_indices.insert(split.train_indices.end(), idx.begin(),
                               idx.begin() + static_cast<std::ptrdiff_t>(n_train));
    split.test_indices.insert(split.test_indices.end(),
                              idx.begin() + static_cast<std::ptrdiff_t>(n_train),
                              idx.end());
  }
  std::sort(split.train_indices.begin(), split.train_indices.end());
  std::sort(split.test_indices.begin(), split.test_indices.end());
  split.train = select_rows(d, split.train_indices);
  split.test = select_rows(d, split.test_indices);
  return split;
}

Dataset project(const Dataset& d, const FeatureMask& mask) {
  if (mask.size() != d.num_attributes()) {
    throw Error(ErrorCode::MaskLengthMismatch,
                "mask has " + std::to_string(mask.size()) + " bits, dataset has " +
                    std::to_string(d.num_attributes()) + " attributes");
  }
  const auto cols = mask.selected();
  if (cols.empty()) throw Error(ErrorCode::EmptyMask, "mask selects no feature");
  const std::size_t n = d.num_instances();
  std::vector<double> values;
  values.reserve(n * cols.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : cols) values.push_back(d.at(i, j));
  }
  std::vector<std::string> names;
  for (std::size_t j : cols) names.push_back(d.attribute_names()[j]);
  return Dataset(d.name(), std::move(values), cols.size(),
                 std::vector<int>(d.labels().begin(), d.labels().end()),
                 std::move(names), d.class_names());
}

}  // namespace rsofs
