#include "able2rank/selftest.hpp"

#include <algorithm>
#include <sstream>

#include "gtest/gtest.h"

using namespace able2rank;

TEST(SelfTest, AllPropertiesPass) {
  const auto results = run_selftest();
  ASSERT_FALSE(results.empty());
  for (const auto& r : results) EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
  std::ostringstream out;
  EXPECT_TRUE(print_selftest(out, results));
  EXPECT_NE(out.str().find("PASS"), std::string::npos);
}

TEST(SelfTest, BrokenMeasureIsCaught) {
  SelfTestOptions options;
  options.random_samples = 500;
  // Breaks symmetry by favouring the first pair.
  options.scalar = [](const ProportionMeasure& m, double a, double b, double c, double d) {
    const double v = scalar_proportion(m, a, b, c, d);
    return a > c ? v * 0.5 : v;
  };
  const auto results = run_selftest(options);
  EXPECT_TRUE(std::any_of(results.begin(), results.end(), [](const PropertyResult& r) { return !r.passed; }));
  std::ostringstream out;
  EXPECT_FALSE(print_selftest(out, results));
  EXPECT_NE(out.str().find("FAIL"), std::string::npos);
}
