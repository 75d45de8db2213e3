#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "able2rank/analogy.hpp"
#include "able2rank/dataset.hpp"

namespace able2rank {

/// One training preference scored against a query pair.
struct SupportEntry {
  double score = 0.0;
  /// True when the transferred preference is x_i > x_j.
  bool supports_i = false;
  /// Position of the training pair in the preference store.
  std::size_t training_index = 0;

  friend bool operator==(const SupportEntry&, const SupportEntry&) = default;
};

/// Descending score, then ascending training index. This is a strict total
/// order, so any correct selection agrees with a stable descending sort.
inline bool ranks_before(const SupportEntry& lhs, const SupportEntry& rhs) noexcept {
  if (lhs.score != rhs.score) return lhs.score > rhs.score;
  return lhs.training_index < rhs.training_index;
}

/// Scored training preferences for the query pair (i, j), i < j.
struct SupportList {
  std::size_t i = 0;
  std::size_t j = 0;
  /// Number of training pairs that were scored (|D_pair|).
  std::size_t store_size = 0;
  /// Sorted by ranks_before; either all store_size entries or a top prefix.
  std::vector<SupportEntry> entries;
};

struct AppOptions {
  Aggregation aggregation = Aggregation::mean;
  /// 0 = one worker per hardware thread.
  std::size_t threads = 1;
};

/// Analogy-based pairwise preferences. For every query pair i < j and every
/// training pair (z, z'), scores s_ij = v(z, z', x_i, x_j) and
/// s_ji = v(z, z', x_j, x_i); the entry keeps max(s_ij, s_ji) and supports
/// i over j iff s_ij > s_ji (ties support j). Returns full sorted lists.
std::vector<SupportList> app(const PreferenceStore& store, std::span<const ObjectVector> query,
                             const ProportionMeasure& measure, const AppOptions& options = {});

/// Same scoring as app(), but each list keeps only its `keep` best entries,
/// found by bounded selection instead of a full sort.
std::vector<SupportList> app_top_k(const PreferenceStore& store, std::span<const ObjectVector> query,
                                   const ProportionMeasure& measure, std::size_t keep,
                                   const AppOptions& options = {});

/// Pairwise support counts c_ij; the diagonal is zero.
class ComparisonMatrix {
 public:
  ComparisonMatrix() = default;
  ComparisonMatrix(std::size_t n, std::size_t k_effective);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::size_t k_effective() const noexcept { return k_effective_; }

  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return counts_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return counts_[i * n_ + j]; }

  /// p_ij = c_ij / (c_ij + c_ji); 0.5 when no support was counted.
  [[nodiscard]] double preference(std::size_t i, std::size_t j) const;

 private:
  std::size_t n_ = 0;
  std::size_t k_effective_ = 0;
  std::vector<double> counts_;
};

/// Counts the top min(k, store_size) entries of every list into c_ij / c_ji.
ComparisonMatrix comparison_matrix(std::span<const SupportList> lists, std::size_t n, std::size_t k);

/// CSV dump: pair_i,pair_j,rank_in_list,score,supports_i (1-based indices).
void write_support_lists(std::ostream& out, std::span<const SupportList> lists);

}  // namespace able2rank
