#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "able2rank/analogy.hpp"
#include "able2rank/dataset.hpp"
#include "able2rank/pairwise.hpp"

namespace able2rank {

/// A total order of n items.
///
/// order()[p] is the item at position p (the ordering); positions()[i] is the
/// position of item i (the ranking). Both are 0-based.
class Ranking {
 public:
  Ranking() = default;

  /// Throws validation_error unless `order` is a permutation of 0..n-1.
  static Ranking from_order(std::vector<std::size_t> order);
  static Ranking from_positions(std::span<const std::size_t> positions);
  static Ranking identity(std::size_t n);

  [[nodiscard]] std::size_t size() const noexcept { return order_.size(); }
  [[nodiscard]] const std::vector<std::size_t>& order() const noexcept { return order_; }
  [[nodiscard]] const std::vector<std::size_t>& positions() const noexcept { return positions_; }

  friend bool operator==(const Ranking& lhs, const Ranking& rhs) { return lhs.order_ == rhs.order_; }

 private:
  std::vector<std::size_t> order_;
  std::vector<std::size_t> positions_;
};

struct BtlOptions {
  double tol = 1e-8;
  std::size_t max_iter = 10000;
  /// Added to every off-diagonal count before fitting.
  double smoothing = 0.1;
  /// Record the log-likelihood after every sweep.
  bool track_likelihood = false;
};

/// Bradley-Terry-Luce strengths, normalized to sum to one.
struct ThetaVector {
  std::vector<double> theta;
  std::size_t iterations = 0;
  bool converged = false;
  /// Starting value followed by one value per sweep, when tracking is on.
  std::vector<double> log_likelihood;
};

/// log L(theta) = sum_{i != j} c'_ij * log(theta_i / (theta_i + theta_j)),
/// with c'_ij = c_ij + smoothing.
double btl_log_likelihood(const ComparisonMatrix& counts, std::span<const double> theta, double smoothing);

/// Maximum-likelihood BTL fit by minorization-maximization:
///   theta_i <- W_i / sum_{j != i} (c'_ij + c'_ji) / (theta_i + theta_j),
/// W_i = sum_{j != i} c'_ij, renormalized after every sweep. Stops when the
/// largest change is below tol or after max_iter sweeps.
ThetaVector btl_fit(const ComparisonMatrix& counts, const BtlOptions& options = {});

/// Items by descending theta; equal values keep ascending item order.
Ranking rank_from_scores(std::span<const double> theta);
inline Ranking rank_from_scores(const ThetaVector& theta) { return rank_from_scores(theta.theta); }

struct Able2RankOptions {
  BtlOptions btl;
  AppOptions app;
};

/// Full able2rank prediction on already preprocessed data: training
/// preferences from every instance, analogical transfer to all query pairs,
/// top-k counting, BTL aggregation.
Ranking able2rank_predict(std::span<const RankingInstance> train, std::span<const ObjectVector> query,
                          const ProportionMeasure& measure, std::size_t k, const Able2RankOptions& options = {});

/// Predictions for every (measure, k) combination, scoring each measure once.
/// Result is indexed [measure][k].
std::vector<std::vector<Ranking>> able2rank_predict_grid(std::span<const RankingInstance> train,
                                                         std::span<const ObjectVector> query,
                                                         std::span<const ProportionMeasure> measures,
                                                         std::span<const std::size_t> ks,
                                                         const Able2RankOptions& options = {});

}  // namespace able2rank
