#include "able2rank/preprocess.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "able2rank/error.hpp"
#include "gtest/gtest.h"
#include "support/synthetic.hpp"

using namespace able2rank;

TEST(Skewness, SymmetricIsZero) { EXPECT_NEAR(skewness(std::vector<double>{1, 2, 3, 4, 5}), 0.0, 1e-15); }

TEST(Skewness, DegenerateInputs) {
  EXPECT_EQ(skewness(std::vector<double>{1, 1, 1}), 0.0);
  EXPECT_EQ(skewness(std::vector<double>{1, 2}), 0.0);
  EXPECT_EQ(skewness(std::vector<double>{0.1, 0.1, 0.1, 0.1}), 0.0);
}

// Reference values from scipy.stats.skew(..., bias=False).
TEST(Skewness, MatchesStatisticsPackage) {
  EXPECT_NEAR(skewness(std::vector<double>{1, 2, 3, 4, 100}), 2.232395911636458, 1e-12);
  EXPECT_NEAR(skewness(std::vector<double>{2, 3, 5, 8, 13, 40}), 2.06055008480195, 1e-12);
}

TEST(MaybeLogTransform, ExtremeRightSkewGetsLogged) {
  const std::vector<double> column{1.0, std::exp(1.0), std::exp(2.0), std::exp(3.0), std::exp(100.0)};
  // |skew| 2.23607 before, 2.23247 after (scipy).
  const auto out = maybe_log_transform(column);
  ASSERT_TRUE(out.log_applied);
  EXPECT_NEAR(out.values[4], 100.0, 1e-12);
}

TEST(MaybeLogTransform, NonPositiveValuesSkip) {
  for (const auto& column : {std::vector<double>{0, 1, 2, 100}, std::vector<double>{-1, 1, 2, 100}}) {
    const auto out = maybe_log_transform(column);
    EXPECT_FALSE(out.log_applied);
    EXPECT_EQ(out.values, column);
  }
}

TEST(MaybeLogTransform, SymmetricColumnUnchanged) {
  // log raises |skew| from 0 to 0.8727 (scipy).
  const std::vector<double> column{1, 2, 3, 4, 5};
  const auto out = maybe_log_transform(column);
  EXPECT_FALSE(out.log_applied);
  EXPECT_EQ(out.values, column);
}

TEST(MinMaxNormalize, Examples) {
  EXPECT_EQ(min_max_normalize(std::vector<double>{2, 4, 6}), (std::vector<double>{0, 0.5, 1}));
  EXPECT_EQ(min_max_normalize(std::vector<double>{7, 7, 7}), (std::vector<double>{0.5, 0.5, 0.5}));
  const auto out = min_max_normalize(std::vector<double>{0, 1, 3});
  EXPECT_EQ(out[0], 0.0);
  EXPECT_NEAR(out[1], 1.0 / 3.0, 1e-15);
  EXPECT_EQ(out[2], 1.0);
}

TEST(MinMaxNormalize, RangeAndOrderProperty) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal(0.0, 50.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> column(2 + rng() % 40);
    for (auto& x : column) x = normal(rng);
    const auto out = min_max_normalize(column);
    for (std::size_t a = 0; a < column.size(); ++a) {
      ASSERT_GE(out[a], 0.0);
      ASSERT_LE(out[a], 1.0);
      for (std::size_t b = 0; b < column.size(); ++b) {
        if (column[a] < column[b]) ASSERT_LE(out[a], out[b]);
      }
    }
  }
}

TEST(Standardize, Examples) {
  const auto out = standardize(std::vector<double>{1, 3});
  EXPECT_NEAR(out[0], -1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(out[1], 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(standardize(std::vector<double>{5, 5, 5}), (std::vector<double>{0, 0, 0}));
}

TEST(Standardize, MeanZeroVarianceOneProperty) {
  std::mt19937_64 rng(5);
  std::lognormal_distribution<double> dist(1.0, 1.5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> column(2 + rng() % 50);
    for (auto& x : column) x = dist(rng);
    const auto out = standardize(column);
    double mean = 0.0;
    for (double x : out) mean += x;
    mean /= static_cast<double>(out.size());
    double var = 0.0;
    for (double x : out) var += (x - mean) * (x - mean);
    var /= static_cast<double>(out.size() - 1);
    EXPECT_NEAR(mean, 0.0, 1e-12);
    EXPECT_NEAR(var, 1.0, 1e-9);
  }
}

TEST(PreprocessForAble2rank, LogDecisionPropagatesToTest) {
  const auto schema = synthetic::numeric_schema(1);
  const RankingInstance train{"train", schema, {{1}, {2}, {4}, {8}, {16}, {1000}}};
  const RankingInstance test{"test", schema, {{1}, {2}, {3}, {4}, {5}}};
  ASSERT_TRUE(maybe_log_transform(std::vector<double>{1, 2, 4, 8, 16, 1000}).log_applied);
  ASSERT_FALSE(maybe_log_transform(std::vector<double>{1, 2, 3, 4, 5}).log_applied);

  const auto out = preprocess_for_able2rank(train, test);
  EXPECT_TRUE(out.train_report.columns[0].log_applied);
  EXPECT_TRUE(out.test_report.columns[0].log_applied);
  const double top = std::log(5.0);
  for (std::size_t r = 0; r < 5; ++r) {
    EXPECT_NEAR(out.test.objects[r][0], std::log(static_cast<double>(r + 1)) / top, 1e-15);
  }
  EXPECT_NEAR(out.train.front().objects[1][0], std::log(2.0) / std::log(1000.0), 1e-15);
}

TEST(PreprocessForAble2rank, MinMaxIsSplitLocal) {
  const auto schema = synthetic::numeric_schema(1);
  const RankingInstance train{"train", schema, {{-10}, {0}, {10}}};
  const RankingInstance test{"test", schema, {{-1}, {1}}};
  const auto out = preprocess_for_able2rank(train, test);
  EXPECT_EQ(out.test.objects[0][0], 0.0);
  EXPECT_EQ(out.test.objects[1][0], 1.0);
  EXPECT_EQ(out.train_report.columns[0].min, -10.0);
  EXPECT_EQ(out.test_report.columns[0].max, 1.0);
}

TEST(PreprocessForAble2rank, BinaryPassThrough) {
  const auto schema = parse_schema("a,binary,n,y\nb,binary,0,1\n");
  const RankingInstance train{"train", schema, {{1, 0}, {0, 1}, {1, 1}}};
  const RankingInstance test{"test", schema, {{0, 0}, {1, 0}}};
  const auto out = preprocess_for_able2rank(train, test);
  EXPECT_EQ(out.train.front().objects, train.objects);
  EXPECT_EQ(out.test.objects, test.objects);
}

TEST(PreprocessForAble2rank, OutputsInUnitInterval) {
  const std::vector<double> w{1.0, -2.0, 0.5};
  const auto train = synthetic::linear_utility_instance(25, w, 1, "tr", -5.0, 40.0);
  const auto test = synthetic::linear_utility_instance(12, w, 2, "te", 0.5, 300.0);
  const auto out = preprocess_for_able2rank(train, test);
  for (const auto* rows : {&out.train.front().objects, &out.test.objects}) {
    for (const auto& row : *rows) {
      for (double x : row) {
        EXPECT_GE(x, 0.0);
        EXPECT_LE(x, 1.0);
      }
    }
  }
}

TEST(PreprocessForAble2rank, MinMaxIdempotentOnNormalizedData) {
  const auto schema = synthetic::numeric_schema(2);
  const RankingInstance train{"train", schema, {{0.0, 1.0}, {0.25, 0.0}, {1.0, 0.5}}};
  const RankingInstance test{"test", schema, {{0.0, 0.0}, {1.0, 1.0}, {0.5, 0.2}}};
  const auto out = preprocess_for_able2rank(train, test);
  // Zeros block the log transform, so only min-max acts.
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t k = 0; k < 2; ++k) {
      EXPECT_NEAR(out.train.front().objects[r][k], train.objects[r][k], 1e-12);
      EXPECT_NEAR(out.test.objects[r][k], test.objects[r][k], 1e-12);
    }
  }
}

TEST(PreprocessForAble2rank, SchemaMismatch) {
  const RankingInstance train{"train", synthetic::numeric_schema(2), {{1, 2}}};
  const RankingInstance test{"test", synthetic::numeric_schema(3), {{1, 2, 3}}};
  EXPECT_THROW(preprocess_for_able2rank(train, test), validation_error);
}

TEST(StandardizeForBaseline, UsesTrainingStatistics) {
  const auto schema = parse_schema("a,numeric\nb,binary,0,1\n");
  const std::vector<RankingInstance> train{{"train", schema, {{1, 1}, {3, 0}}}};
  const RankingInstance test{"test", schema, {{2, 1}, {5, 0}}};
  const auto out = standardize_for_baseline(train, test);
  EXPECT_NEAR(out.test.objects[0][0], 0.0, 1e-15);
  EXPECT_NEAR(out.test.objects[1][0], 3.0 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(out.test.objects[1][1], 0.0);
  EXPECT_EQ(out.train_report.columns[0].mean, 2.0);
}

TEST(PreprocessReport, KeyValueDump) {
  const auto schema = synthetic::numeric_schema(1);
  const RankingInstance train{"train", schema, {{1}, {2}, {4}, {8}, {16}, {1000}}};
  const RankingInstance test{"test", schema, {{1}, {2}}};
  const auto out = preprocess_for_able2rank(train, test);
  std::ostringstream text;
  write_preprocess_report(text, out.train_report);
  EXPECT_EQ(text.str(),
            "able2rank.train.f1.type=numeric\n"
            "able2rank.train.f1.log_applied=true\n"
            "able2rank.train.f1.min=0\n"
            "able2rank.train.f1.max=6.907755278982137\n");
}

TEST(PreprocessReport, BinaryColumnsAreNotStandardized) {
  const auto schema = parse_schema("a,numeric\nb,binary,0,1\n");
  const std::vector<RankingInstance> train{{"train", schema, {{1, 1}, {3, 0}}}};
  const RankingInstance test{"test", schema, {{2, 1}, {5, 0}}};
  std::ostringstream text;
  write_preprocess_report(text, standardize_for_baseline(train, test).train_report);
  EXPECT_EQ(text.str(),
            "standardize.train.a.type=numeric\n"
            "standardize.train.a.mean=2\n"
            "standardize.train.a.sd=1.4142135623730951\n"
            "standardize.train.b.type=binary\n"
            "standardize.train.b.standardized=false\n");
}
