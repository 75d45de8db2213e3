#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "able2rank/analogy.hpp"

namespace able2rank {

using ScalarMeasureFn = std::function<double(const ProportionMeasure&, double, double, double, double)>;

struct SelfTestOptions {
  /// Scalar measure under test; swapping it lets harnesses check that a broken
  /// measure is caught.
  ScalarMeasureFn scalar = scalar_proportion;
  std::size_t random_samples = 10000;
  std::uint64_t seed = 42;
};

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Embedded property suite: Boolean table and reduction, reflexivity,
/// symmetry, range, BTL two-item closed form, ranking-loss oracle.
std::vector<PropertyResult> run_selftest(const SelfTestOptions& options = {});

/// Prints one `PASS`/`FAIL` line per property and a summary; returns true
/// when everything passed.
bool print_selftest(std::ostream& out, const std::vector<PropertyResult>& results);

}  // namespace able2rank
