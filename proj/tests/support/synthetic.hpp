#pragma once

// Synthetic ranking data with a known linear utility, shared by the unit and
// acceptance suites.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "able2rank/dataset.hpp"

namespace able2rank::synthetic {

inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline FeatureSchema numeric_schema(std::size_t d) {
  std::vector<FeatureColumn> columns;
  for (std::size_t k = 0; k < d; ++k) columns.push_back({"f" + std::to_string(k + 1), FeatureKind::numeric()});
  return FeatureSchema(std::move(columns));
}

inline double utility(const std::vector<double>& w, const ObjectVector& x) {
  return std::inner_product(w.begin(), w.end(), x.begin(), 0.0);
}

/// Rows sorted by descending utility w.x, i.e. ground-truth order.
inline RankingInstance sorted_by_utility(std::vector<ObjectVector> rows, const std::vector<double>& w,
                                         std::string name) {
  std::stable_sort(rows.begin(), rows.end(),
                   [&](const ObjectVector& a, const ObjectVector& b) { return utility(w, a) > utility(w, b); });
  RankingInstance inst;
  inst.name = std::move(name);
  inst.schema = numeric_schema(w.size());
  inst.objects = std::move(rows);
  return inst;
}

/// Features uniform in [lo, hi); ranked by the noiseless utility w.x.
inline RankingInstance linear_utility_instance(std::size_t n, const std::vector<double>& w, std::uint64_t seed,
                                               std::string name = "synthetic", double lo = 1.0, double hi = 10.0) {
  std::mt19937_64 rng(seed);
  std::vector<ObjectVector> rows(n, ObjectVector(w.size()));
  for (auto& row : rows) {
    for (auto& x : row) x = lo + (hi - lo) * uniform01(rng);
  }
  return sorted_by_utility(std::move(rows), w, std::move(name));
}

/// Like linear_utility_instance, but every object is then shifted along w so
/// that the sorted utilities become equally spaced between the drawn extremes.
/// Rank position is then an exact affine function of the features. Requires a
/// nonzero w and n >= 2.
inline RankingInstance equally_spaced_utility_instance(std::size_t n, const std::vector<double>& w,
                                                       std::uint64_t seed, std::string name = "synthetic",
                                                       double lo = 1.0, double hi = 10.0) {
  auto inst = linear_utility_instance(n, w, seed, std::move(name), lo, hi);
  const double norm2 = std::inner_product(w.begin(), w.end(), w.begin(), 0.0);
  const double top = utility(w, inst.objects.front());
  const double bottom = utility(w, inst.objects.back());
  for (std::size_t r = 0; r < n; ++r) {
    auto& row = inst.objects[r];
    const double target = top - (top - bottom) * static_cast<double>(r) / static_cast<double>(n - 1);
    const double step = (target - utility(w, row)) / norm2;
    for (std::size_t k = 0; k < w.size(); ++k) row[k] += step * w[k];
  }
  return inst;
}

}  // namespace able2rank::synthetic
