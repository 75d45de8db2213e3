#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "able2rank/dataset.hpp"

namespace able2rank {

/// Adjusted Fisher-Pearson sample skewness g1 * sqrt(n(n-1)) / (n-2).
/// Returns 0 for fewer than three values or a constant column.
double skewness(std::span<const double> values);

struct LogTransformResult {
  std::vector<double> values;
  bool log_applied = false;
};

/// Replaces the column by its natural log when every value is positive and
/// the absolute skewness strictly decreases.
LogTransformResult maybe_log_transform(std::span<const double> column);

/// (x - min) / (max - min); a constant column maps to 0.5 everywhere.
std::vector<double> min_max_normalize(std::span<const double> column);

/// (x - mean) / sd with the sample standard deviation; a constant column
/// (or a single value) maps to zeros.
std::vector<double> standardize(std::span<const double> column);

enum class PreprocessMode { able2rank, standardize };

struct ColumnReport {
  std::string name;
  FeatureType type = FeatureType::numeric;
  bool log_applied = false;
  /// min-max statistics (able2rank mode).
  double min = 0.0;
  double max = 0.0;
  /// standardization statistics (baseline mode).
  double mean = 0.0;
  double sd = 0.0;
};

struct PreprocessReport {
  PreprocessMode mode = PreprocessMode::able2rank;
  std::string split;
  std::vector<ColumnReport> columns;
};

struct PreprocessedSplits {
  std::vector<RankingInstance> train;
  RankingInstance test;
  PreprocessReport train_report;
  PreprocessReport test_report;
};

/// able2rank preprocessing. The log decision is made per column on the pooled
/// training rows and reused on the test rows; min-max statistics are computed
/// separately on each split. Binary columns pass through.
PreprocessedSplits preprocess_for_able2rank(std::span<const RankingInstance> train, const RankingInstance& test);
PreprocessedSplits preprocess_for_able2rank(const RankingInstance& train, const RankingInstance& test);

/// Baseline preprocessing: non-binary columns standardized with statistics
/// of the pooled training rows, applied to both splits.
PreprocessedSplits standardize_for_baseline(std::span<const RankingInstance> train, const RankingInstance& test);

/// Plain-text `key=value` dump, one line per statistic.
void write_preprocess_report(std::ostream& out, const PreprocessReport& report);

}  // namespace able2rank
