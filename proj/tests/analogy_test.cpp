#include "able2rank/analogy.hpp"

#include <random>

#include "able2rank/error.hpp"
#include "able2rank/eval.hpp"
#include "gtest/gtest.h"

using namespace able2rank;

namespace {

const auto kA = make_measure(MeasureKind::arithmetic);
const auto kAStrict = make_measure(MeasureKind::arithmetic_strict);
const auto kG = make_measure(MeasureKind::geometric);
const auto kMM = make_measure(MeasureKind::min_max);
const auto kAE = make_measure(MeasureKind::approx_equal, 0.1);
const auto kAEGraded = make_measure(MeasureKind::approx_equal_graded, 0.1);

bool implies(bool x, bool y) { return !x || y; }

constexpr int kSamples = 10000;

}  // namespace

TEST(BooleanProportion, TableRows) {
  EXPECT_TRUE(boolean_proportion(0, 1, 0, 1));
  EXPECT_TRUE(boolean_proportion(1, 1, 1, 1));
  EXPECT_FALSE(boolean_proportion(0, 1, 1, 0));
  int ones = 0;
  for (int bits = 0; bits < 16; ++bits) ones += boolean_proportion(bits & 8, bits & 4, bits & 2, bits & 1);
  EXPECT_EQ(ones, 6);
}

TEST(BooleanProportion, EqualsLogicalFormulaExhaustively) {
  for (int bits = 0; bits < 16; ++bits) {
    const bool a = bits & 8, b = bits & 4, c = bits & 2, d = bits & 1;
    const bool formula = (implies(a, b) == implies(c, d)) && (implies(b, a) == implies(d, c));
    EXPECT_EQ(boolean_proportion(a, b, c, d), formula) << bits;
  }
}

TEST(BooleanProportion, CentralPermutation) {
  for (int bits = 0; bits < 16; ++bits) {
    const bool a = bits & 8, b = bits & 4, c = bits & 2, d = bits & 1;
    EXPECT_EQ(boolean_proportion(a, b, c, d), boolean_proportion(a, c, b, d)) << bits;
  }
}

TEST(ScalarProportion, BooleanReduction) {
  for (const auto& m : {kA, kAStrict, kMM}) {
    for (int bits = 0; bits < 16; ++bits) {
      const int a = (bits >> 3) & 1, b = (bits >> 2) & 1, c = (bits >> 1) & 1, d = bits & 1;
      EXPECT_EQ(scalar_proportion(m, a, b, c, d), boolean_proportion(a, b, c, d) ? 1.0 : 0.0)
          << to_string(m) << " " << bits;
    }
  }
}

TEST(ScalarProportion, Arithmetic) {
  EXPECT_NEAR(scalar_proportion(kA, 0.8, 0.6, 0.5, 0.3), 1.0, 1e-12);
  EXPECT_NEAR(scalar_proportion(kA, 0.9, 0.5, 0.6, 0.4), 0.8, 1e-12);
  EXPECT_NEAR(scalar_proportion(kA, 0.2, 0.5, 0.9, 0.1), 0.2, 1e-12);
  // sign(0) differs from sign(-0.4).
  EXPECT_NEAR(scalar_proportion(kA, 0.5, 0.5, 0.3, 0.7), 0.6, 1e-12);
}

TEST(ScalarProportion, ArithmeticStrict) {
  EXPECT_NEAR(scalar_proportion(kAStrict, 0.9, 0.5, 0.6, 0.4), 0.8, 1e-12);
  EXPECT_EQ(scalar_proportion(kAStrict, 0.2, 0.5, 0.9, 0.1), 0.0);
  EXPECT_EQ(scalar_proportion(kAStrict, 0.5, 0.5, 0.3, 0.7), 0.0);
  EXPECT_EQ(scalar_proportion(kAStrict, 0.3, 0.3, 0.8, 0.8), 1.0);
}

TEST(ScalarProportion, Geometric) {
  EXPECT_NEAR(scalar_proportion(kG, 0.4, 0.2, 0.2, 0.1), 1.0, 1e-12);
  EXPECT_NEAR(scalar_proportion(kG, 0.8, 0.4, 0.6, 0.2), 2.0 / 3.0, 1e-12);
  EXPECT_EQ(scalar_proportion(kG, 0.2, 0.8, 0.6, 0.3), 0.0);
  // Equal signs but max(ad, bc) = 0.
  EXPECT_EQ(scalar_proportion(kG, 0.0, 0.0, 0.5, 0.5), 0.0);
}

TEST(ScalarProportion, MinMax) {
  EXPECT_EQ(scalar_proportion(kMM, 1, 1, 0, 0), 1.0);
  EXPECT_NEAR(scalar_proportion(kMM, 0.2, 0.6, 0.3, 0.9), 0.7, 1e-12);
  EXPECT_NEAR(scalar_proportion(kMM, 0.5, 0.7, 0.2, 0.4), 0.8, 1e-12);
  EXPECT_EQ(scalar_proportion(kMM, 0, 1, 1, 0), 0.0);
}

TEST(ScalarProportion, ApproximateEquality) {
  EXPECT_EQ(scalar_proportion(kAE, 0.5, 0.5, 0.9, 0.9), 1.0);
  EXPECT_EQ(scalar_proportion(kAE, 0.1, 0.5, 0.15, 0.55), 1.0);
  EXPECT_EQ(scalar_proportion(kAE, 0.1, 0.5, 0.9, 0.3), 0.0);
  EXPECT_EQ(scalar_proportion(make_measure(MeasureKind::approx_equal, 0.3), 0.1, 0.35, 0.8, 0.9), 1.0);
}

TEST(ScalarProportion, ApproximateEqualityGraded) {
  EXPECT_EQ(scalar_proportion(kAEGraded, 0.5, 0.5, 0.9, 0.9), 1.0);
  EXPECT_NEAR(scalar_proportion(kAEGraded, 0.5, 0.55, 0.9, 0.9), 0.5, 1e-12);
  EXPECT_EQ(scalar_proportion(kAEGraded, 0.1, 0.5, 0.9, 0.3), 0.0);
  EXPECT_NEAR(scalar_proportion(make_measure(MeasureKind::approx_equal_graded, 0.2), 0.3, 0.4, 0.35, 0.45), 0.5625,
              1e-12);
}

TEST(ScalarProportion, RejectsOutOfRange) {
  EXPECT_THROW(scalar_proportion(kA, -0.1, 0.5, 0.5, 0.5), validation_error);
  EXPECT_THROW(scalar_proportion(kMM, 0.5, 0.5, 1.5, 0.5), validation_error);
  EXPECT_THROW(scalar_proportion(kG, 0.5, 0.5, 0.5, std::nan("")), validation_error);
}

TEST(ScalarProportion, RangeProperty) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& m : default_measures()) {
    for (int s = 0; s < kSamples; ++s) {
      const double v = scalar_proportion(m, unit(rng), unit(rng), unit(rng), unit(rng));
      ASSERT_GE(v, 0.0) << to_string(m);
      ASSERT_LE(v, 1.0) << to_string(m);
    }
  }
}

TEST(ScalarProportion, ReflexivityProperty) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& m : default_measures()) {
    for (int s = 0; s < kSamples; ++s) {
      const double a = unit(rng), b = unit(rng);
      if (m.kind == MeasureKind::geometric && !(a * b > 0.0)) continue;
      ASSERT_NEAR(scalar_proportion(m, a, b, a, b), 1.0, 1e-12) << to_string(m) << " " << a << " " << b;
    }
  }
}

TEST(ScalarProportion, SymmetryProperty) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& m : default_measures()) {
    for (int s = 0; s < kSamples; ++s) {
      const double a = unit(rng), b = unit(rng), c = unit(rng), d = unit(rng);
      ASSERT_EQ(scalar_proportion(m, a, b, c, d), scalar_proportion(m, c, d, a, b)) << to_string(m);
    }
  }
}

// Holds except where |x - y| == eps exactly: the indicator is 1 there and the
// graded degree 0. Continuous sampling does not hit that boundary.
TEST(ScalarProportion, GradedApproximateEqualityDominatesIndicator) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (double eps : {0.05, 0.1, 0.3}) {
    const auto ae = make_measure(MeasureKind::approx_equal, eps);
    const auto graded = make_measure(MeasureKind::approx_equal_graded, eps);
    int hits = 0;
    for (int s = 0; s < kSamples; ++s) {
      const double a = unit(rng), b = unit(rng);
      const double c = std::clamp(a + (unit(rng) - 0.5) * 0.4, 0.0, 1.0);
      const double d = std::clamp(b + (unit(rng) - 0.5) * 0.4, 0.0, 1.0);
      if (scalar_proportion(ae, a, b, c, d) == 1.0) {
        ++hits;
        ASSERT_GT(scalar_proportion(graded, a, b, c, d), 0.0);
      }
    }
    EXPECT_GT(hits, 0);
  }
}

TEST(VectorProportion, SingleCoordinateEqualsScalar) {
  for (const auto& m : default_measures()) {
    const std::vector<double> a{0.3}, b{0.7}, c{0.2}, d{0.65};
    EXPECT_EQ(vector_proportion(m, a, b, c, d), scalar_proportion(m, 0.3, 0.7, 0.2, 0.65));
  }
}

TEST(VectorProportion, ReflexiveVectors) {
  const std::vector<double> a{0.1, 0.9, 0.4}, b{0.6, 0.2, 0.4};
  for (const auto& m : {kA, kAStrict, kMM, kG, kAE, kAEGraded}) {
    EXPECT_NEAR(vector_proportion(m, a, b, a, b), 1.0, 1e-12) << to_string(m);
  }
}

TEST(VectorProportion, MeanOfCoordinates) {
  // Coordinate 1: Boolean 0101 -> 1. Coordinate 2: Boolean 0110 -> 0.
  const std::vector<double> a{0, 0}, b{1, 1}, c{0, 1}, d{1, 0};
  EXPECT_EQ(vector_proportion(kA, a, b, c, d), 0.5);
  EXPECT_EQ(vector_proportion(kA, a, b, c, d, Aggregation::minimum), 0.0);
}

TEST(VectorProportion, Errors) {
  const std::vector<double> two{0.1, 0.2}, three{0.1, 0.2, 0.3}, empty;
  EXPECT_THROW(vector_proportion(kA, two, two, two, three), validation_error);
  EXPECT_THROW(vector_proportion(kA, empty, empty, empty, empty), validation_error);
  const std::vector<double> bad{0.1, 1.2};
  EXPECT_THROW(vector_proportion(kA, two, two, two, bad), validation_error);
}

TEST(MeasureNames, ParseAndPrint) {
  EXPECT_EQ(parse_measure("A"), kA);
  EXPECT_EQ(parse_measure("A-strict"), kAStrict);
  EXPECT_EQ(parse_measure("G"), kG);
  EXPECT_EQ(parse_measure("MM"), kMM);
  EXPECT_EQ(parse_measure("AE").epsilon, 0.1);
  EXPECT_EQ(parse_measure("AE-graded:eps=0.25").epsilon, 0.25);
  EXPECT_EQ(parse_measure("AE", 0.3).epsilon, 0.3);
  EXPECT_EQ(to_string(parse_measure("AE-graded:eps=0.25")), "AE-graded:eps=0.25");
  EXPECT_EQ(to_string(kMM), "MM");
  EXPECT_THROW(parse_measure("B"), parse_error);
  EXPECT_THROW(parse_measure("A:eps=0.1"), parse_error);
  EXPECT_THROW(parse_measure("AE:eps=0"), parse_error);
  EXPECT_THROW(parse_measure("AE:eps=1.5"), parse_error);
  EXPECT_THROW(parse_measure("AE:tol=0.1"), parse_error);
}
