#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "rsofs/data.hpp"
#include "rsofs/error.hpp"
#include "rsofs/rng.hpp"
#include "test_support.hpp"

using namespace rsofs;
using rsofs::fixtures::TempFile;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no rsofs::Error thrown";
  return ErrorCode::InvalidArgument;
}

Dataset parse(const std::string& text, CsvOptions opts = {}) {
  std::istringstream in(text);
  return parse_csv(in, "fixture", opts);
}

Dataset column(std::vector<double> v) {
  std::vector<int> labels(v.size());
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<int>(i % 2);
  return Dataset("col", std::move(v), 1, std::move(labels));
}

// n_per_class rows for each class, attribute = row index.
Dataset balanced(const std::vector<std::size_t>& n_per_class, std::size_t attrs = 2) {
  std::vector<double> values;
  std::vector<int> labels;
  std::size_t row = 0;
  for (std::size_t c = 0; c < n_per_class.size(); ++c) {
    for (std::size_t i = 0; i < n_per_class[c]; ++i, ++row) {
      for (std::size_t j = 0; j < attrs; ++j) values.push_back(static_cast<double>(row * 10 + j));
      labels.push_back(static_cast<int>(c));
    }
  }
  return Dataset("balanced", values, attrs, labels);
}

}  // namespace

TEST(LoadCsv, TwoClassFourAttributeFile) {
  std::ostringstream text;
  text << "sepal_length,sepal_width,petal_length,petal_width,class\n";
  Rng rng(3);
  for (int i = 0; i < 150; ++i) {
    for (int j = 0; j < 4; ++j) text << 1.0 + rng.uniform01() * 6.0 << ',';
    text << (i < 75 ? "setosa" : "other") << '\n';
  }
  TempFile f("iris2", text.str());
  const auto d = load_csv(f.path());
  EXPECT_EQ(d.num_attributes(), 4u);
  EXPECT_EQ(d.num_instances(), 150u);
  EXPECT_EQ(d.num_classes(), 2u);
  EXPECT_EQ(d.attribute_names().front(), "sepal_length");
  EXPECT_EQ(d.class_names(), (std::vector<std::string>{"setosa", "other"}));
}

TEST(LoadCsv, BundledIrisShape) {
  const auto d = load_csv(rsofs::fixtures::data_path("iris"));
  EXPECT_EQ(d.num_attributes(), 4u);
  EXPECT_EQ(d.num_instances(), 150u);
  EXPECT_EQ(d.num_classes(), 3u);
}

TEST(LoadCsv, SingleClassFileIsRejected) {
  EXPECT_EQ(code_of([] { parse("1,2,a\n3,4,a\n5,6,a\n"); }), ErrorCode::SingleClassDataset);
}

TEST(LoadCsv, UnparseableNumericCellTakesColumnMean) {
  const auto d = parse("1.0,10,x\nbad,20,y\n4.0,30,x\n");
  ASSERT_EQ(d.num_instances(), 3u);
  EXPECT_DOUBLE_EQ(d.at(1, 0), (1.0 + 4.0) / 2.0);
  EXPECT_DOUBLE_EQ(d.at(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(d.at(2, 1), 30.0);
}

TEST(LoadCsv, MissingFile) {
  EXPECT_EQ(code_of([] { load_csv("/nonexistent/nowhere.csv"); }), ErrorCode::FileNotFound);
}

TEST(LoadCsv, RaggedRowReportsLine) {
  try {
    parse("a,b,c\n1,2,x\n3,4\n5,6,y\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedRow);
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(LoadCsv, MissingLabelIsMalformed) {
  EXPECT_EQ(code_of([] { parse("1,2,x\n3,4,?\n5,6,y\n"); }), ErrorCode::MalformedRow);
}

TEST(LoadCsv, EmptyInput) {
  EXPECT_EQ(code_of([] { parse(""); }), ErrorCode::EmptyDataset);
  CsvOptions header;
  header.header = HeaderMode::Present;
  EXPECT_EQ(code_of([&] { parse("a,b,class\n", header); }), ErrorCode::EmptyDataset);
}

TEST(LoadCsv, CategoricalCodesAndModeImputation) {
  const auto d = parse("red,1,x\nblue,2,y\nred,3,x\n?,4,y\ngreen,5,x\n");
  EXPECT_DOUBLE_EQ(d.at(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(d.at(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(d.at(3, 0), 0.0);  // mode is "red"
  EXPECT_DOUBLE_EQ(d.at(4, 0), 2.0);
}

TEST(LoadCsv, LabelsCodedByFirstAppearance) {
  const auto d = parse("1,b\n2,a\n3,b\n4,c\n");
  EXPECT_EQ(std::vector<int>(d.labels().begin(), d.labels().end()),
            (std::vector<int>{0, 1, 0, 2}));
}

TEST(LoadCsv, HeaderDetection) {
  EXPECT_EQ(parse("f1,f2,cls\n1,2,a\n3,4,b\n").num_instances(), 2u);
  EXPECT_EQ(parse("1,2,a\n3,4,b\n").num_instances(), 2u);
  CsvOptions absent;
  absent.header = HeaderMode::Absent;
  EXPECT_EQ(parse("1,2,a\n3,4,b\n5,6,a\n", absent).num_instances(), 3u);
}

TEST(LoadCsv, LabelSelectedByIndexOrName) {
  CsvOptions first;
  first.label = ColumnSelector::index(0);
  const auto a = parse("x,1,2\ny,3,4\n", first);
  EXPECT_EQ(a.num_attributes(), 2u);
  EXPECT_EQ(a.class_names(), (std::vector<std::string>{"x", "y"}));

  CsvOptions named;
  named.label = ColumnSelector::named("kind");
  const auto b = parse("kind,u,v\nx,1,2\ny,3,4\n", named);
  EXPECT_EQ(b.attribute_names(), (std::vector<std::string>{"u", "v"}));

  CsvOptions missing;
  missing.label = ColumnSelector::named("nope");
  EXPECT_EQ(code_of([&] { parse("kind,u\nx,1\ny,2\n", missing); }),
            ErrorCode::MissingLabelColumn);
  CsvOptions out_of_range;
  out_of_range.label = ColumnSelector::index(5);
  EXPECT_EQ(code_of([&] { parse("1,x\n2,y\n", out_of_range); }),
            ErrorCode::MissingLabelColumn);
}

TEST(ColumnSelector, ParsesIntegersAsIndices) {
  EXPECT_EQ(std::get<std::ptrdiff_t>(ColumnSelector::parse("-1").value), -1);
  EXPECT_EQ(std::get<std::string>(ColumnSelector::parse("class").value), "class");
}

TEST(Normalize, AffineRescale) {
  const auto d = min_max_normalize(column({2, 4, 6}));
  EXPECT_DOUBLE_EQ(d.at(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(d.at(1, 0), 0.5);
  EXPECT_DOUBLE_EQ(d.at(2, 0), 1.0);
}

TEST(Normalize, ConstantColumnIsZero) {
  const auto d = min_max_normalize(column({5, 5, 5}));
  for (int i = 0; i < 3; ++i) EXPECT_EQ(d.at(i, 0), 0.0);
}

TEST(Normalize, NegativeValues) {
  const auto d = min_max_normalize(column({-1, 0, 3}));
  EXPECT_DOUBLE_EQ(d.at(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(d.at(1, 0), 0.25);
  EXPECT_DOUBLE_EQ(d.at(2, 0), 1.0);
}

TEST(Normalize, Idempotent) {
  for (const char* name : {"iris", "wine", "glass"}) {
    const auto once = min_max_normalize(load_csv(rsofs::fixtures::data_path(name)));
    EXPECT_EQ(min_max_normalize(once), once) << name;
    for (double v : once.values()) {
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 1.0);
    }
  }
}

TEST(StratifiedSplit, ExactProportions) {
  const auto s = stratified_split(balanced({5, 5}), 0.8, 42);
  EXPECT_EQ(s.train.num_instances(), 8u);
  EXPECT_EQ(s.test.num_instances(), 2u);
  std::map<int, int> train_per_class, test_per_class;
  for (int l : s.train.labels()) ++train_per_class[l];
  for (int l : s.test.labels()) ++test_per_class[l];
  EXPECT_EQ(train_per_class, (std::map<int, int>{{0, 4}, {1, 4}}));
  EXPECT_EQ(test_per_class, (std::map<int, int>{{0, 1}, {1, 1}}));
}

TEST(StratifiedSplit, DeterministicForSeed) {
  const auto d = balanced({20, 13, 7});
  const auto a = stratified_split(d, 0.8, 7);
  const auto b = stratified_split(d, 0.8, 7);
  EXPECT_EQ(a.train_indices, b.train_indices);
  EXPECT_EQ(a.test_indices, b.test_indices);
  EXPECT_EQ(a.train, b.train);
  const auto c = stratified_split(d, 0.8, 8);
  EXPECT_NE(a.train_indices, c.train_indices);
}

TEST(StratifiedSplit, PerClassCountsMatchIndependentCount) {
  const auto d = balanced({50, 30, 20});
  const auto s = stratified_split(d, 0.7, 11);
  // Independent count of each class on each side from the index lists.
  std::map<int, std::size_t> total, train;
  for (int l : d.labels()) ++total[l];
  for (std::size_t i : s.train_indices) ++train[d.label(i)];
  std::size_t expected_train = 0;
  for (const auto& [c, n] : total) {
    const auto want = static_cast<std::size_t>(std::llround(0.7 * static_cast<double>(n)));
    EXPECT_EQ(train[c], want) << "class " << c;
    expected_train += want;
  }
  EXPECT_EQ(s.train.num_instances(), expected_train);
  EXPECT_NEAR(static_cast<double>(s.train.num_instances()), 70.0, 2.0);
}

TEST(StratifiedSplit, IsAPartition) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto d = balanced({9, 4, 17, 2});
    const auto s = stratified_split(d, 0.6, seed);
    std::vector<std::size_t> all = s.train_indices;
    all.insert(all.end(), s.test_indices.begin(), s.test_indices.end());
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> expected(d.num_instances());
    std::iota(expected.begin(), expected.end(), 0);
    EXPECT_EQ(all, expected);
    for (std::size_t i = 0; i < s.train_indices.size(); ++i) {
      EXPECT_EQ(s.train.label(i), d.label(s.train_indices[i]));
    }
    EXPECT_EQ(s.train.distinct_label_count(), 4u);
  }
}

TEST(StratifiedSplit, SingletonClassStaysInTrainWithWarning) {
  const auto s = stratified_split(balanced({6, 1}), 0.8, 1);
  const auto train_labels = std::vector<int>(s.train.labels().begin(), s.train.labels().end());
  EXPECT_NE(std::find(train_labels.begin(), train_labels.end(), 1), train_labels.end());
  ASSERT_EQ(s.warnings.size(), 1u);
  EXPECT_NE(s.warnings.front().find("ClassTooSmall"), std::string::npos);
}

TEST(StratifiedSplit, RejectsBadFraction) {
  EXPECT_EQ(code_of([] { stratified_split(balanced({3, 3}), 1.0, 1); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { stratified_split(balanced({3, 3}), 0.0, 1); }),
            ErrorCode::InvalidArgument);
}

TEST(Project, AllOnesIsIdentity) {
  const auto d = load_csv(rsofs::fixtures::data_path("wine"));
  EXPECT_EQ(project(d, FeatureMask::all(d.num_attributes())), d);
}

TEST(Project, KeepsSelectedColumns) {
  const auto d = balanced({2, 2}, 4);
  const auto p = project(d, FeatureMask::from_string("0101"));
  ASSERT_EQ(p.num_attributes(), 2u);
  for (std::size_t i = 0; i < d.num_instances(); ++i) {
    EXPECT_EQ(p.at(i, 0), d.at(i, 1));
    EXPECT_EQ(p.at(i, 1), d.at(i, 3));
    EXPECT_EQ(p.label(i), d.label(i));
  }
}

TEST(Project, IrisTwoFeatureMask) {
  const auto d = load_csv(rsofs::fixtures::data_path("iris"));
  const auto p = project(d, FeatureMask::from_string("0011"));
  EXPECT_EQ(p.num_attributes(), 2u);
  EXPECT_EQ(p.num_instances(), 150u);
}

TEST(Project, PopcountEqualsAttributeCount) {
  const auto d = balanced({3, 3}, 6);
  for (std::size_t idx = 1; idx < 64; ++idx) {
    const auto m = rsofs::fixtures::mask_from_index(idx, 6);
    EXPECT_EQ(project(d, m).num_attributes(), m.popcount());
  }
}

TEST(Project, Errors) {
  const auto d = balanced({2, 2}, 4);
  EXPECT_EQ(code_of([&] { project(d, FeatureMask(4)); }), ErrorCode::EmptyMask);
  EXPECT_EQ(code_of([&] { project(d, FeatureMask::all(3)); }), ErrorCode::MaskLengthMismatch);
}
