#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "able2rank/aggregate.hpp"
#include "able2rank/analogy.hpp"
#include "able2rank/dataset.hpp"
#include "able2rank/preprocess.hpp"

namespace able2rank {

/// Normalized ranking loss: the fraction of item pairs ordered differently by
/// the two rankings. Throws unless both have the same length n >= 2.
double ranking_loss(const Ranking& pi, const Ranking& pi_prime);

/// The six measures in their canonical order, AE variants at `epsilon`.
std::vector<ProportionMeasure> default_measures(double epsilon = kDefaultEpsilon);
std::vector<std::size_t> default_ks();

struct CvOptions {
  std::size_t folds = 2;
  std::size_t repeats = 5;
  std::uint64_t seed = 42;
  /// Workers over (repeat, fold) units; 0 = hardware concurrency.
  std::size_t threads = 1;
};

struct GridCell {
  ProportionMeasure measure;
  std::size_t k = 0;
  double mean_loss = 0.0;
};

struct GridSearchResult {
  ProportionMeasure best_measure;
  std::size_t best_k = 0;
  /// Measure-major (measure order of the input, then k order). Empty when the
  /// grid had a single cell and no cross-validation was needed.
  std::vector<GridCell> cells;
};

/// Fold partition for one repeat: fold index of every training object (single
/// instance) or of every training instance (several instances). Depends only
/// on (seed, repeat).
std::vector<std::size_t> fold_assignment(std::size_t items, std::size_t folds, std::uint64_t seed,
                                         std::size_t repeat);

/// Repeated k-fold cross-validation of able2rank over measures x ks on raw
/// (unpreprocessed) training data. Each fold is preprocessed on its own. The
/// minimum mean loss wins; ties go to the smaller k, then the earlier measure.
GridSearchResult grid_search_cv(std::span<const RankingInstance> train, std::span<const ProportionMeasure> measures,
                                std::span<const std::size_t> ks, const CvOptions& cv = {},
                                const Able2RankOptions& options = {});

struct ExperimentConfig {
  std::vector<ProportionMeasure> measures = default_measures();
  std::vector<std::size_t> ks = default_ks();
  CvOptions cv;
  Able2RankOptions able2rank;
  bool run_able2rank = true;
  bool run_err = true;
  /// Externally obtained Ranking SVM loss, copied into the report verbatim.
  std::optional<double> svm_loss;
};

struct PhaseTimings {
  double grid_search_seconds = 0.0;
  double able2rank_seconds = 0.0;
  double err_seconds = 0.0;
};

struct ExperimentReport {
  std::string experiment;
  std::optional<GridSearchResult> grid;
  std::optional<double> able2rank_loss;
  std::optional<double> err_loss;
  std::optional<double> svm_loss;
  Ranking able2rank_ranking;
  Ranking err_ranking;
  std::vector<PreprocessReport> preprocessing;
  PhaseTimings timings;
};

/// TRAIN -> TEST experiment on raw data: grid search on the training
/// rankings, refit on all of them, prediction and loss on the test ranking.
ExperimentReport run_experiment(std::span<const RankingInstance> train, const RankingInstance& test,
                                const ExperimentConfig& config = {});

/// CSV with columns experiment,v*,k*,able2rank,err,svm. Contains no timing
/// data, so identical inputs give identical bytes.
void write_report_csv(std::ostream& out, std::span<const ExperimentReport> reports);

/// Aligned plain-text table, optionally followed by phase timings.
void write_report_table(std::ostream& out, std::span<const ExperimentReport> reports, bool with_timings = false);

/// Mean validation loss of every grid cell.
void write_cv_table(std::ostream& out, const GridSearchResult& grid);

}  // namespace able2rank
