#pragma once

#include <span>
#include <utility>
#include <vector>

#include "able2rank/aggregate.hpp"
#include "able2rank/dataset.hpp"

namespace able2rank {

/// Linear scoring model of expected rank regression (ERR).
struct LinearModel {
  std::vector<double> weights;
  double intercept = 0.0;

  [[nodiscard]] double predict(std::span<const double> x) const;
};

/// The object at 1-based rank position r of an n-item ranking gets r / (n + 1).
std::vector<std::pair<ObjectVector, double>> err_targets(const RankingInstance& instance);

/// Ordinary least squares with intercept over the pooled targets of all
/// instances. Rank-deficient designs get the minimum-norm weight vector.
LinearModel err_fit(std::span<const RankingInstance> train);

/// Orders objects by ascending predicted target (a small expected rank is
/// better); equal predictions keep ascending index order.
Ranking err_predict(const LinearModel& model, std::span<const ObjectVector> query);

}  // namespace able2rank
