#include "able2rank/pairwise.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

#include "able2rank/error.hpp"
#include "able2rank/format.hpp"
#include "able2rank/parallel.hpp"

namespace able2rank {

namespace {

// Training pairs flattened row-major for the scoring loop.
struct FlatStore {
  std::size_t dim = 0;
  std::size_t size = 0;
  std::vector<double> preferred;
  std::vector<double> dispreferred;
};

void check_unit_vector(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw validation_error(std::string(what) + " has a feature outside [0,1]: " + format_real(x));
    }
  }
}

FlatStore flatten(const PreferenceStore& store, std::span<const ObjectVector> query) {
  if (store.empty()) throw validation_error("app: empty preference store");
  if (query.size() < 2) throw validation_error("app: query needs at least two objects");
  FlatStore flat;
  flat.dim = store.pairs.front().first.size();
  flat.size = store.size();
  if (flat.dim == 0) throw validation_error("app: objects have no features");
  flat.preferred.reserve(flat.size * flat.dim);
  flat.dispreferred.reserve(flat.size * flat.dim);
  for (const auto& [z, zp] : store.pairs) {
    if (z.size() != flat.dim || zp.size() != flat.dim) throw validation_error("app: training vectors differ in length");
    check_unit_vector(z, "training object");
    check_unit_vector(zp, "training object");
    flat.preferred.insert(flat.preferred.end(), z.begin(), z.end());
    flat.dispreferred.insert(flat.dispreferred.end(), zp.begin(), zp.end());
  }
  for (const auto& x : query) {
    if (x.size() != flat.dim) throw validation_error("app: query and training vectors differ in length");
    check_unit_vector(x, "query object");
  }
  return flat;
}

template <MeasureKind K, Aggregation Agg>
void score_pair(const FlatStore& flat, std::span<const double> xi, std::span<const double> xj, double eps,
                std::vector<SupportEntry>& out) {
  const auto dim = flat.dim;
  out.resize(flat.size);
  for (std::size_t p = 0; p < flat.size; ++p) {
    const double* z = flat.preferred.data() + p * dim;
    const double* zp = flat.dispreferred.data() + p * dim;
    double s_ij;
    double s_ji;
    if constexpr (Agg == Aggregation::mean) {
      s_ij = 0.0;
      s_ji = 0.0;
      for (std::size_t f = 0; f < dim; ++f) {
        s_ij += detail::proportion<K>(z[f], zp[f], xi[f], xj[f], eps);
        s_ji += detail::proportion<K>(z[f], zp[f], xj[f], xi[f], eps);
      }
      s_ij /= static_cast<double>(dim);
      s_ji /= static_cast<double>(dim);
    } else {
      s_ij = 1.0;
      s_ji = 1.0;
      for (std::size_t f = 0; f < dim; ++f) {
        s_ij = std::min(s_ij, detail::proportion<K>(z[f], zp[f], xi[f], xj[f], eps));
        s_ji = std::min(s_ji, detail::proportion<K>(z[f], zp[f], xj[f], xi[f], eps));
      }
    }
    // Every stored pair has z preferred to z', so agreement with the training
    // direction reduces to s_ij > s_ji; equality falls to j over i.
    out[p] = SupportEntry{std::max(s_ij, s_ji), s_ij > s_ji, p};
  }
}

std::vector<SupportList> run_app(const PreferenceStore& store, std::span<const ObjectVector> query,
                                 const ProportionMeasure& measure, std::size_t keep, const AppOptions& options) {
  const auto flat = flatten(store, query);
  const auto n = query.size();
  std::vector<SupportList> lists;
  lists.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) lists.push_back(SupportList{i, j, flat.size, {}});
  }
  const auto limit = std::min(keep, flat.size);

  detail::dispatch(measure.kind, [&](auto k) {
    constexpr MeasureKind K = decltype(k)::value;
    parallel_for(lists.size(), options.threads, [&](std::size_t idx) {
      auto& list = lists[idx];
      std::vector<SupportEntry> scored;
      if (options.aggregation == Aggregation::mean) {
        score_pair<K, Aggregation::mean>(flat, query[list.i], query[list.j], measure.epsilon, scored);
      } else {
        score_pair<K, Aggregation::minimum>(flat, query[list.i], query[list.j], measure.epsilon, scored);
      }
      if (limit < scored.size()) {
        std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(limit), scored.end(),
                          ranks_before);
        scored.resize(limit);
        scored.shrink_to_fit();
      } else {
        std::sort(scored.begin(), scored.end(), ranks_before);
      }
      list.entries = std::move(scored);
    });
  });
  return lists;
}

}  // namespace

std::vector<SupportList> app(const PreferenceStore& store, std::span<const ObjectVector> query,
                             const ProportionMeasure& measure, const AppOptions& options) {
  return run_app(store, query, measure, std::numeric_limits<std::size_t>::max(), options);
}

std::vector<SupportList> app_top_k(const PreferenceStore& store, std::span<const ObjectVector> query,
                                   const ProportionMeasure& measure, std::size_t keep, const AppOptions& options) {
  if (keep == 0) throw validation_error("app_top_k: keep must be positive");
  return run_app(store, query, measure, keep, options);
}

ComparisonMatrix::ComparisonMatrix(std::size_t n, std::size_t k_effective)
    : n_(n), k_effective_(k_effective), counts_(n * n, 0.0) {}

double ComparisonMatrix::preference(std::size_t i, std::size_t j) const {
  const double total = (*this)(i, j) + (*this)(j, i);
  return total > 0.0 ? (*this)(i, j) / total : 0.5;
}

ComparisonMatrix comparison_matrix(std::span<const SupportList> lists, std::size_t n, std::size_t k) {
  if (k == 0) throw validation_error("comparison_matrix: k must be positive");
  if (n < 2) throw validation_error("comparison_matrix: need at least two items");
  const std::size_t store_size = lists.empty() ? 0 : lists.front().store_size;
  const auto k_eff = std::min(k, store_size);
  ComparisonMatrix counts(n, k_eff);
  for (const auto& list : lists) {
    if (list.i >= n || list.j >= n || list.i == list.j) throw validation_error("comparison_matrix: bad item index");
    if (list.store_size != store_size) throw validation_error("comparison_matrix: lists scored against different stores");
    if (list.entries.size() < k_eff) {
      throw validation_error("comparison_matrix: list truncated below k = " + std::to_string(k_eff));
    }
    for (std::size_t r = 0; r < k_eff; ++r) {
      if (list.entries[r].supports_i) {
        counts(list.i, list.j) += 1.0;
      } else {
        counts(list.j, list.i) += 1.0;
      }
    }
  }
  return counts;
}

void write_support_lists(std::ostream& out, std::span<const SupportList> lists) {
  out << "pair_i,pair_j,rank_in_list,score,supports_i\n";
  for (const auto& list : lists) {
    for (std::size_t r = 0; r < list.entries.size(); ++r) {
      const auto& e = list.entries[r];
      out << list.i + 1 << ',' << list.j + 1 << ',' << r + 1 << ',' << format_real(e.score) << ','
          << (e.supports_i ? 1 : 0) << '\n';
    }
  }
}

}  // namespace able2rank
