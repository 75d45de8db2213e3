#include "able2rank/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "able2rank/error.hpp"

namespace able2rank {

double LinearModel::predict(std::span<const double> x) const {
  if (x.size() != weights.size()) throw validation_error("LinearModel: feature vector length mismatch");
  double y = intercept;
  for (std::size_t k = 0; k < x.size(); ++k) y += weights[k] * x[k];
  return y;
}

std::vector<std::pair<ObjectVector, double>> err_targets(const RankingInstance& instance) {
  const auto n = instance.size();
  std::vector<std::pair<ObjectVector, double>> out;
  out.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    out.emplace_back(instance.objects[r], static_cast<double>(r + 1) / static_cast<double>(n + 1));
  }
  return out;
}

LinearModel err_fit(std::span<const RankingInstance> train) {
  std::vector<std::pair<ObjectVector, double>> points;
  for (const auto& inst : train) {
    auto targets = err_targets(inst);
    points.insert(points.end(), std::make_move_iterator(targets.begin()), std::make_move_iterator(targets.end()));
  }
  if (points.empty()) throw validation_error("err_fit: no training objects");
  const auto m = points.size();
  const auto d = points.front().first.size();
  for (const auto& [x, y] : points) {
    if (x.size() != d) throw validation_error("err_fit: feature vectors differ in length");
    if (!std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); })) {
      throw validation_error("err_fit: non-finite feature value");
    }
  }

  // Centering removes the intercept from the least-squares system, so the
  // minimum-norm solution only constrains the weights.
  Eigen::VectorXd mean_x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
  double mean_y = 0.0;
  for (const auto& [x, y] : points) {
    mean_x += Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(d));
    mean_y += y;
  }
  mean_x /= static_cast<double>(m);
  mean_y /= static_cast<double>(m);

  LinearModel model;
  model.weights.assign(d, 0.0);
  model.intercept = mean_y;
  if (d == 0) return model;

  Eigen::MatrixXd design(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(d));
  Eigen::VectorXd target(static_cast<Eigen::Index>(m));
  for (std::size_t r = 0; r < m; ++r) {
    const auto row = static_cast<Eigen::Index>(r);
    design.row(row) = Eigen::Map<const Eigen::VectorXd>(points[r].first.data(), static_cast<Eigen::Index>(d)) - mean_x;
    target(row) = points[r].second - mean_y;
  }
  const Eigen::VectorXd w = design.completeOrthogonalDecomposition().solve(target);
  for (std::size_t k = 0; k < d; ++k) model.weights[k] = w(static_cast<Eigen::Index>(k));
  model.intercept = mean_y - w.dot(mean_x);
  return model;
}

Ranking err_predict(const LinearModel& model, std::span<const ObjectVector> query) {
  std::vector<double> predicted;
  predicted.reserve(query.size());
  for (const auto& x : query) predicted.push_back(model.predict(x));
  std::vector<std::size_t> order(query.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return predicted[a] < predicted[b]; });
  return Ranking::from_order(std::move(order));
}

}  // namespace able2rank
