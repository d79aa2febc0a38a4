#include "rsofs/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "rsofs/error.hpp"
#include "rsofs/parallel.hpp"
#include "rsofs/rso.hpp"

namespace rsofs {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::uint64_t to_uint(std::string_view key, std::string_view text) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(key) + ": expected a non-negative integer, got '" +
                    std::string(text) + "'");
  }
  return v;
}

double to_real(std::string_view key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() ||
      !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(key) + ": expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

bool to_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  throw Error(ErrorCode::InvalidArgument,
              std::string(key) + ": expected true or false, got '" + std::string(text) + "'");
}

std::string normalize_key(std::string_view key) {
  std::string k(trim(key));
  while (!k.empty() && k.front() == '-') k.erase(k.begin());
  std::replace(k.begin(), k.end(), '_', '-');
  return k;
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string format_features(double v) {
  if (v == std::floor(v)) return fixed(v, 0);
  return fixed(v, 2);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> row_fields(const ReportRow& r) {
  std::vector<std::string> f{r.dataset, r.algorithm,
                             r.seed ? std::to_string(*r.seed) : "mean"};
  if (r.failed) {
    f.insert(f.end(), 6, "NA");
    return f;
  }
  f.push_back(fixed(r.accuracy_pct, 2));
  f.push_back(fixed(r.precision_pct, 2));
  f.push_back(fixed(r.recall_pct, 2));
  f.push_back(fixed(r.f1_pct, 2));
  f.push_back(format_features(r.num_features));
  f.push_back(fixed(r.time_seconds, 3));
  return f;
}

// Splits one CSV record, honouring double-quoted fields.
std::vector<std::string> parse_record(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else if (c != '\r') {
      out.back() += c;
    }
  }
  return out;
}

std::string dataset_name(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

ReportRow make_row(const std::string& dataset, Algorithm algo, std::uint64_t seed,
                   const OptimizerResult& r, bool record_time) {
  ReportRow row;
  row.dataset = dataset;
  row.algorithm = std::string(to_string(algo));
  row.seed = seed;
  row.accuracy_pct = r.report.metrics.accuracy * 100.0;
  row.precision_pct = r.report.metrics.precision * 100.0;
  row.recall_pct = r.report.metrics.recall * 100.0;
  row.f1_pct = r.report.metrics.f1 * 100.0;
  row.num_features = static_cast<double>(r.report.num_features);
  row.time_seconds = record_time ? r.report.time_seconds : 0.0;
  return row;
}

ReportRow mean_row(const std::vector<ReportRow>& group) {
  ReportRow m;
  m.dataset = group.front().dataset;
  m.algorithm = group.front().algorithm;
  for (const auto& r : group) {
    m.accuracy_pct += r.accuracy_pct;
    m.precision_pct += r.precision_pct;
    m.recall_pct += r.recall_pct;
    m.f1_pct += r.f1_pct;
    m.num_features += r.num_features;
    m.time_seconds += r.time_seconds;
  }
  const double n = static_cast<double>(group.size());
  for (double* v : {&m.accuracy_pct, &m.precision_pct, &m.recall_pct, &m.f1_pct,
                    &m.num_features, &m.time_seconds}) {
    *v /= n;
  }
  return m;
}

OptimizerResult run_full_mask(const SplitDataset& split, std::size_t knn_k,
                              double w) {
  const auto t0 = std::chrono::steady_clock::now();
  const FeatureMask all = FeatureMask::all(split.train.num_attributes());
  OptimizerResult r;
  r.best_mask = all;
  r.report = evaluate_mask(all, split, knn_k);
  r.report.time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.trajectory = {scalarize(r.report.metrics.accuracy, all.size(), all.size(), w)};
  r.fitness_evaluations = 1;
  return r;
}

OptimizerResult run_algorithm(const RunConfig& cfg, Algorithm algo,
                              const SplitDataset& split, std::uint64_t seed) {
  switch (algo) {
    case Algorithm::Rso: {
      RSOParams p{cfg.bso, cfg.rl, cfg.knn_k, cfg.feature_weight};
      p.bso.seed = seed;
      p.rl.seed = seed;
      return run_rso(split, p);
    }
    case Algorithm::Bso: {
      BSOParams p = cfg.bso;
      p.seed = seed;
      return run_bso(split, p, cfg.knn_k, cfg.feature_weight);
    }
    case Algorithm::None:
      return run_full_mask(split, cfg.knn_k, cfg.feature_weight);
    case Algorithm::Random:
      return run_random_baseline(split,
                                 cfg.random_budget.value_or(evaluation_budget(cfg.bso)),
                                 seed, cfg.knn_k, cfg.feature_weight);
    case Algorithm::Bpso: {
      BPSOParams p = cfg.bpso;
      p.seed = seed;
      return run_bpso_baseline(split, p, cfg.knn_k, cfg.feature_weight);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown algorithm");
}

void set_sweep_parameter(RunConfig& cfg, const std::string& name, double v) {
  auto as_count = [&] {
    if (v < 0.0 || v != std::floor(v)) {
      throw Error(ErrorCode::InvalidArgument,
                  name + " takes non-negative integers, got " + std::to_string(v));
    }
    return static_cast<std::size_t>(v);
  };
  if (name == "flip") cfg.bso.flip = as_count();
  else if (name == "chance-max") cfg.bso.chance_max = as_count();
  else if (name == "max-iter") cfg.bso.max_iter = as_count();
  else if (name == "num-bees") cfg.bso.num_bees = as_count();
  else if (name == "ls-iter") cfg.bso.ls_iter = as_count();
  else if (name == "lr") cfg.rl.lr = v;
  else if (name == "alpha") cfg.rl.alpha = v;
  else if (name == "beta") cfg.rl.beta = v;
  else throw Error(ErrorCode::UnknownParameter, "cannot sweep '" + name + "'");
}

}  // namespace

std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::Rso: return "rso";
    case Algorithm::Bso: return "bso";
    case Algorithm::None: return "none";
    case Algorithm::Random: return "random";
    case Algorithm::Bpso: return "bpso";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  name = trim(name);
  for (Algorithm a : {Algorithm::Rso, Algorithm::Bso, Algorithm::None,
                      Algorithm::Random, Algorithm::Bpso}) {
    if (name == to_string(a)) return a;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown algorithm '" + std::string(name) + "'");
}

void RunConfig::validate() const {
  if (datasets.empty() || algorithms.empty() || seeds.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                "need at least one dataset, one algorithm and one seed");
  }
  if (knn_k == 0) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "train fraction must lie in (0, 1)");
  }
  RSOParams{bso, rl, knn_k, feature_weight}.validate();
  if (threads == 0 || bso.threads == 0) {
    throw Error(ErrorCode::InvalidArgument, "thread counts must be positive");
  }
  if (random_budget && *random_budget == 0) {
    throw Error(ErrorCode::InvalidArgument, "random budget must be positive");
  }
  if (bpso.swarm_size == 0 || bpso.budget < bpso.swarm_size) {
    throw Error(ErrorCode::InvalidArgument, "BPSO budget must cover the swarm");
  }
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  text = trim(text);
  std::vector<std::uint64_t> seeds;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const auto lo = to_uint("seeds", text.substr(0, dots));
    const auto hi = to_uint("seeds", text.substr(dots + 2));
    if (hi < lo) throw Error(ErrorCode::InvalidArgument, "seed range is reversed");
    for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  for (auto part : split(text, ',')) seeds.push_back(to_uint("seeds", part));
  return seeds;
}

void apply_setting(RunConfig& cfg, std::string_view raw_key, std::string_view raw_value) {
  const std::string key = normalize_key(raw_key);
  const std::string_view value = trim(raw_value);
  if (key == "data") {
    cfg.datasets.clear();
    for (auto p : split(value, ',')) {
      if (!p.empty()) cfg.datasets.emplace_back(p);
    }
  } else if (key == "algo") {
    cfg.algorithms.clear();
    for (auto a : split(value, ',')) cfg.algorithms.push_back(parse_algorithm(a));
  } else if (key == "seeds") {
    cfg.seeds = parse_seed_list(value);
  } else if (key == "k") {
    cfg.knn_k = to_uint(key, value);
  } else if (key == "train-frac") {
    cfg.train_fraction = to_real(key, value);
  } else if (key == "flip") {
    cfg.bso.flip = to_uint(key, value);
  } else if (key == "chance-max") {
    cfg.bso.chance_max = to_uint(key, value);
  } else if (key == "max-iter") {
    cfg.bso.max_iter = to_uint(key, value);
  } else if (key == "num-bees") {
    cfg.bso.num_bees = to_uint(key, value);
  } else if (key == "ls-iter") {
    cfg.bso.ls_iter = to_uint(key, value);
  } else if (key == "lr") {
    cfg.rl.lr = to_real(key, value);
  } else if (key == "alpha") {
    cfg.rl.alpha = to_real(key, value);
  } else if (key == "beta") {
    cfg.rl.beta = to_real(key, value);
  } else if (key == "w") {
    cfg.feature_weight = to_real(key, value);
  } else if (key == "out") {
    cfg.output = std::string(value);
  } else if (key == "format") {
    if (value == "csv") cfg.format = ReportFormat::Csv;
    else if (value == "markdown" || value == "md") cfg.format = ReportFormat::Markdown;
    else throw Error(ErrorCode::InvalidArgument, "format must be csv or markdown");
  } else if (key == "threads") {
    cfg.threads = to_uint(key, value);
  } else if (key == "bee-threads") {
    cfg.bso.threads = to_uint(key, value);
  } else if (key == "no-time") {
    cfg.record_time = !to_bool(key, value);
  } else if (key == "random-budget") {
    cfg.random_budget = to_uint(key, value);
  } else if (key == "qtable-dump") {
    cfg.qtable_prefix = std::string(value);
  } else if (key == "label") {
    cfg.csv.label = ColumnSelector::parse(std::string(value));
  } else if (key == "header") {
    if (value == "auto") cfg.csv.header = HeaderMode::Auto;
    else if (to_bool(key, value)) cfg.csv.header = HeaderMode::Present;
    else cfg.csv.header = HeaderMode::Absent;
  } else if (key == "swarm-size") {
    cfg.bpso.swarm_size = to_uint(key, value);
  } else if (key == "bpso-budget") {
    cfg.bpso.budget = to_uint(key, value);
  } else {
    throw Error(ErrorCode::UnknownParameter, "unknown setting '" + key + "'");
  }
}

void apply_config_text(RunConfig& cfg, std::string_view text) {
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = trim(line.substr(0, hash));
    }
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::InvalidArgument,
                  "config line " + std::to_string(line_no) + ": expected key=value",
                  line_no);
    }
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  out << kReportHeader << '\n';
  for (const auto& r : rows) {
    const auto f = row_fields(r);
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i) out << ',';
      out << csv_field(f[i]);
    }
    out << '\n';
  }
}

void write_report_markdown(std::ostream& out, const std::vector<ReportRow>& rows) {
  const auto header = split(kReportHeader, ',');
  out << '|';
  for (auto h : header) out << ' ' << h << " |";
  out << "\n|";
  for (std::size_t i = 0; i < header.size(); ++i) out << (i < 3 ? " --- |" : " ---: |");
  out << '\n';
  for (const auto& r : rows) {
    out << '|';
    for (const auto& f : row_fields(r)) out << ' ' << f << " |";
    out << '\n';
  }
}

std::vector<ReportRow> read_report_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kReportHeader) {
    throw Error(ErrorCode::MalformedRow, "missing report header", 1);
  }
  std::vector<ReportRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto f = parse_record(line);
    if (f.size() != 9) {
      throw Error(ErrorCode::MalformedRow,
                  "report line " + std::to_string(line_no) + ": expected 9 fields",
                  line_no);
    }
    ReportRow r;
    r.dataset = f[0];
    r.algorithm = f[1];
    try {
      if (f[2] != "mean") r.seed = to_uint("seed", f[2]);
      if (f[3] == "NA") {
        r.failed = true;
      } else {
        r.accuracy_pct = to_real("accuracy_pct", f[3]);
        r.precision_pct = to_real("precision_pct", f[4]);
        r.recall_pct = to_real("recall_pct", f[5]);
        r.f1_pct = to_real("f1_pct", f[6]);
        r.num_features = to_real("num_features", f[7]);
        r.time_seconds = to_real("time_seconds", f[8]);
      }
    } catch (const Error& e) {
      throw Error(ErrorCode::MalformedRow,
                  "report line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

BenchmarkResult run_benchmark(const RunConfig& cfg) {
  cfg.validate();
  struct Source {
    std::string name;
    std::optional<Dataset> data;
    std::string error;
    std::vector<SplitDataset> splits;
  };
  std::vector<Source> sources;
  for (const auto& path : cfg.datasets) {
    Source s{dataset_name(path), std::nullopt, {}, {}};
    try {
      s.data = min_max_normalize(load_csv(path, cfg.csv));
      for (auto seed : cfg.seeds) {
        s.splits.push_back(stratified_split(*s.data, cfg.train_fraction, seed));
      }
    } catch (const std::exception& e) {
      s.data.reset();
      s.splits.clear();
      s.error = e.what();
    }
    sources.push_back(std::move(s));
  }

  struct Task {
    std::size_t source, algo, seed;
  };
  std::vector<Task> tasks;
  for (std::size_t d = 0; d < sources.size(); ++d) {
    if (!sources[d].data) continue;
    for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
      for (std::size_t s = 0; s < cfg.seeds.size(); ++s) tasks.push_back({d, a, s});
    }
  }
  std::vector<std::optional<OptimizerResult>> results(tasks.size());
  std::vector<std::string> task_errors(tasks.size());
  parallel_for(tasks.size(), cfg.threads, [&](std::size_t i) {
    const Task& t = tasks[i];
    try {
      results[i] = run_algorithm(cfg, cfg.algorithms[t.algo], sources[t.source].splits[t.seed],
                                 cfg.seeds[t.seed]);
    } catch (const std::exception& e) {
      task_errors[i] = e.what();
    }
  });

  BenchmarkResult out;
  std::size_t next = 0;
  for (const auto& src : sources) {
    if (!src.data) out.errors.push_back(src.name + ": " + src.error);
    for (Algorithm algo : cfg.algorithms) {
      std::vector<ReportRow> group;
      for (auto seed : cfg.seeds) {
        if (!src.data) {
          ReportRow failed{src.name, std::string(to_string(algo)), seed, true};
          out.rows.push_back(failed);
          continue;
        }
        const std::size_t i = next++;
        if (!results[i]) {
          out.errors.push_back(src.name + "/" + std::string(to_string(algo)) + "/" +
                               std::to_string(seed) + ": " + task_errors[i]);
          out.rows.push_back({src.name, std::string(to_string(algo)), seed, true});
          continue;
        }
        const OptimizerResult& r = *results[i];
        group.push_back(make_row(src.name, algo, seed, r, cfg.record_time));
        out.rows.push_back(group.back());
        if (algo == Algorithm::Rso && !cfg.qtable_prefix.empty() && r.q_table) {
          const std::string path =
              cfg.qtable_prefix + "_" + src.name + "_" + std::to_string(seed) + ".csv";
          std::ofstream f(path);
          if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
          f << r.q_table->dump();
        }
        out.runs.push_back({src.name, algo, seed, src.data->num_attributes(), r});
      }
      if (!group.empty()) out.rows.push_back(mean_row(group));
    }
  }
  return out;
}

bool is_integer_parameter(std::string_view name) {
  const std::string k = normalize_key(name);
  return k == "flip" || k == "chance-max" || k == "max-iter" || k == "num-bees" ||
         k == "ls-iter";
}

std::vector<double> default_sweep_values(std::string_view parameter) {
  const std::string k = normalize_key(parameter);
  std::vector<double> values;
  if (is_integer_parameter(k)) {
    for (int i = 1; i <= 10; ++i) values.push_back(i);
  } else if (k == "lr" || k == "alpha" || k == "beta") {
    for (int i = 0; i <= 10; ++i) values.push_back(i / 10.0);
  } else {
    throw Error(ErrorCode::UnknownParameter, "cannot sweep '" + k + "'");
  }
  return values;
}

std::vector<double> parse_sweep_values(std::string_view text) {
  text = trim(text);
  std::vector<double> values;
  const auto parts = split(text, ':');
  if (parts.size() == 3) {
    const double start = to_real("values", parts[0]);
    const double stop = to_real("values", parts[1]);
    const double step = to_real("values", parts[2]);
    if (step <= 0.0 || stop < start) {
      throw Error(ErrorCode::InvalidArgument, "sweep range needs start <= stop and step > 0");
    }
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) {
      values.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
    return values;
  }
  if (parts.size() != 1) {
    throw Error(ErrorCode::InvalidArgument, "sweep values: use start:stop:step or a list");
  }
  for (auto p : split(text, ',')) values.push_back(to_real("values", p));
  return values;
}

std::vector<SweepPoint> parameter_sweep(const RunConfig& cfg, std::string_view parameter,
                                        const std::vector<double>& values) {
  const std::string name = normalize_key(parameter);
  (void)default_sweep_values(name);
  std::vector<SweepPoint> points;
  for (double v : values) {
    RunConfig c = cfg;
    set_sweep_parameter(c, name, v);
    const auto result = run_benchmark(c);
    SweepPoint p{v, 0.0, 0.0};
    std::size_t n = 0;
    for (const auto& row : result.rows) {
      if (row.failed || row.is_aggregate()) continue;
      p.mean_accuracy_pct += row.accuracy_pct;
      p.mean_time_seconds += row.time_seconds;
      ++n;
    }
    if (n) {
      p.mean_accuracy_pct /= static_cast<double>(n);
      p.mean_time_seconds /= static_cast<double>(n);
    }
    points.push_back(p);
  }
  return points;
}

void write_sweep_csv(std::ostream& out, std::string_view parameter,
                     const std::vector<SweepPoint>& points) {
  std::string name = normalize_key(parameter);
  std::replace(name.begin(), name.end(), '-', '_');
  out << name << ",mean_accuracy_pct,mean_time_seconds\n";
  char buf[64];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%g", p.value);
    out << buf << ',' << fixed(p.mean_accuracy_pct, 2) << ','
        << fixed(p.mean_time_seconds, 3) << '\n';
  }
}

}  // namespace rsofs
