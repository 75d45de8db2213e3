#include "able2rank/aggregate.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>

#include "able2rank/error.hpp"

namespace able2rank {

Ranking Ranking::from_order(std::vector<std::size_t> order) {
  const auto n = order.size();
  std::vector<std::size_t> positions(n, n);
  for (std::size_t p = 0; p < n; ++p) {
    if (order[p] >= n || positions[order[p]] != n) throw validation_error("ranking order is not a permutation");
    positions[order[p]] = p;
  }
  Ranking r;
  r.order_ = std::move(order);
  r.positions_ = std::move(positions);
  return r;
}

Ranking Ranking::from_positions(std::span<const std::size_t> positions) {
  const auto n = positions.size();
  std::vector<std::size_t> order(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (positions[i] >= n || order[positions[i]] != n) throw validation_error("ranking positions are not a permutation");
    order[positions[i]] = i;
  }
  return from_order(std::move(order));
}

Ranking Ranking::identity(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return from_order(std::move(order));
}

double btl_log_likelihood(const ComparisonMatrix& counts, std::span<const double> theta, double smoothing) {
  const auto n = counts.size();
  double ll = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double c = counts(i, j) + smoothing;
      if (c > 0.0) ll += c * (std::log(theta[i]) - std::log(theta[i] + theta[j]));
    }
  }
  return ll;
}

ThetaVector btl_fit(const ComparisonMatrix& counts, const BtlOptions& options) {
  const auto n = counts.size();
  if (n < 2) throw validation_error("btl_fit: need at least two items");
  if (!(options.smoothing >= 0.0) || !std::isfinite(options.smoothing)) {
    throw validation_error("btl_fit: smoothing must be finite and non-negative");
  }
  if (!(options.tol > 0.0)) throw validation_error("btl_fit: tolerance must be positive");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double c = counts(i, j);
      if (!std::isfinite(c) || c < 0.0) throw validation_error("btl_fit: counts must be finite and non-negative");
    }
  }

  const double s = options.smoothing;
  std::vector<double> wins(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) wins[i] += counts(i, j) + s;
    }
  }

  ThetaVector fit;
  fit.theta.assign(n, 1.0 / static_cast<double>(n));
  if (options.track_likelihood) fit.log_likelihood.push_back(btl_log_likelihood(counts, fit.theta, s));

  std::vector<double> next(n);
  constexpr double floor = std::numeric_limits<double>::min();
  while (fit.iterations < options.max_iter) {
    for (std::size_t i = 0; i < n; ++i) {
      double denom = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const double games = counts(i, j) + counts(j, i) + 2.0 * s;
        if (games > 0.0) denom += games / (fit.theta[i] + fit.theta[j]);
      }
      // An item without comparisons keeps its value; a winless item sinks to
      // the smallest positive double.
      next[i] = denom > 0.0 ? std::max(wins[i] / denom, floor) : fit.theta[i];
    }
    const double total = std::accumulate(next.begin(), next.end(), 0.0);
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double value = std::max(next[i] / total, floor);
      change = std::max(change, std::abs(value - fit.theta[i]));
      fit.theta[i] = value;
    }
    ++fit.iterations;
    if (options.track_likelihood) {
      const double ll = btl_log_likelihood(counts, fit.theta, s);
      assert(ll >= fit.log_likelihood.back() - 1e-9 * (1.0 + std::abs(ll)));
      fit.log_likelihood.push_back(ll);
    }
    if (change < options.tol) {
      fit.converged = true;
      break;
    }
  }
  return fit;
}

Ranking rank_from_scores(std::span<const double> theta) {
  std::vector<std::size_t> order(theta.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return theta[a] > theta[b]; });
  return Ranking::from_order(std::move(order));
}

Ranking able2rank_predict(std::span<const RankingInstance> train, std::span<const ObjectVector> query,
                          const ProportionMeasure& measure, std::size_t k, const Able2RankOptions& options) {
  const std::size_t ks[] = {k};
  return able2rank_predict_grid(train, query, std::span<const ProportionMeasure>(&measure, 1), ks, options)
      .front()
      .front();
}

std::vector<std::vector<Ranking>> able2rank_predict_grid(std::span<const RankingInstance> train,
                                                         std::span<const ObjectVector> query,
                                                         std::span<const ProportionMeasure> measures,
                                                         std::span<const std::size_t> ks,
                                                         const Able2RankOptions& options) {
  if (ks.empty() || measures.empty()) throw validation_error("able2rank: empty measure or k list");
  if (std::find(ks.begin(), ks.end(), std::size_t{0}) != ks.end()) throw validation_error("able2rank: k must be positive");
  const auto store = extract_pairs(train);
  const auto keep = *std::max_element(ks.begin(), ks.end());
  std::vector<std::vector<Ranking>> out;
  out.reserve(measures.size());
  for (const auto& measure : measures) {
    const auto lists = app_top_k(store, query, measure, keep, options.app);
    auto& row = out.emplace_back();
    for (const auto k : ks) {
      const auto counts = comparison_matrix(lists, query.size(), k);
      row.push_back(rank_from_scores(btl_fit(counts, options.btl)));
    }
  }
  return out;
}

}  // namespace able2rank
