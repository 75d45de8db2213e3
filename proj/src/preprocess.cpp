#include "able2rank/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "able2rank/error.hpp"
#include "able2rank/format.hpp"

namespace able2rank {

namespace {

double mean_of(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

bool is_constant(std::span<const double> values) {
  return values.empty() || std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); });
}

std::vector<double> column_of(std::span<const ObjectVector> rows, std::size_t k) {
  std::vector<double> column;
  column.reserve(rows.size());
  for (const auto& row : rows) column.push_back(row[k]);
  return column;
}

void check_compatible(std::span<const RankingInstance> train, const RankingInstance& test) {
  if (train.empty()) throw validation_error("preprocessing needs at least one training instance");
  for (const auto& inst : train) {
    if (!(inst.schema == test.schema)) {
      throw validation_error("schema mismatch between '" + inst.name + "' and '" + test.name + "'");
    }
  }
  auto check_rows = [](const RankingInstance& inst) {
    for (const auto& row : inst.objects) {
      if (row.size() != inst.dimension()) throw validation_error("row length differs from schema dimension");
    }
  };
  for (const auto& inst : train) check_rows(inst);
  check_rows(test);
}

void set_column(std::vector<ObjectVector>& rows, std::size_t k, std::span<const double> values) {
  for (std::size_t r = 0; r < rows.size(); ++r) rows[r][k] = values[r];
}

const char* type_name(FeatureType type) {
  switch (type) {
    case FeatureType::numeric: return "numeric";
    case FeatureType::binary: return "binary";
    case FeatureType::ordinal: return "ordinal";
  }
  return "?";
}

}  // namespace

double skewness(std::span<const double> values) {
  const auto n = values.size();
  if (n < 3 || is_constant(values)) return 0.0;
  const double mu = mean_of(values);
  double m2 = 0.0;
  double m3 = 0.0;
  for (double v : values) {
    const double dev = v - mu;
    m2 += dev * dev;
    m3 += dev * dev * dev;
  }
  const double nd = static_cast<double>(n);
  m2 /= nd;
  m3 /= nd;
  if (m2 <= 0.0) return 0.0;
  const double g1 = m3 / std::pow(m2, 1.5);
  return g1 * std::sqrt(nd * (nd - 1.0)) / (nd - 2.0);
}

LogTransformResult maybe_log_transform(std::span<const double> column) {
  LogTransformResult result{std::vector<double>(column.begin(), column.end()), false};
  if (column.empty() || std::any_of(column.begin(), column.end(), [](double v) { return !(v > 0.0); })) {
    return result;
  }
  std::vector<double> logged(column.size());
  std::transform(column.begin(), column.end(), logged.begin(), [](double v) { return std::log(v); });
  if (std::abs(skewness(logged)) < std::abs(skewness(column))) {
    result.values = std::move(logged);
    result.log_applied = true;
  }
  return result;
}

std::vector<double> min_max_normalize(std::span<const double> column) {
  std::vector<double> out(column.size(), 0.5);
  if (column.empty()) return out;
  const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
  const double range = *hi - *lo;
  if (range > 0.0) {
    for (std::size_t i = 0; i < column.size(); ++i) {
      out[i] = std::clamp((column[i] - *lo) / range, 0.0, 1.0);
    }
  }
  return out;
}

std::vector<double> standardize(std::span<const double> column) {
  std::vector<double> out(column.size(), 0.0);
  if (column.size() < 2 || is_constant(column)) return out;
  const double mu = mean_of(column);
  double ss = 0.0;
  for (double v : column) ss += (v - mu) * (v - mu);
  const double sd = std::sqrt(ss / static_cast<double>(column.size() - 1));
  for (std::size_t i = 0; i < column.size(); ++i) out[i] = (column[i] - mu) / sd;
  return out;
}

PreprocessedSplits preprocess_for_able2rank(const RankingInstance& train, const RankingInstance& test) {
  return preprocess_for_able2rank(std::span<const RankingInstance>(&train, 1), test);
}

PreprocessedSplits preprocess_for_able2rank(std::span<const RankingInstance> train, const RankingInstance& test) {
  check_compatible(train, test);
  const auto& schema = test.schema;
  PreprocessedSplits out{{train.begin(), train.end()}, test, {}, {}};
  out.train_report = {PreprocessMode::able2rank, "train", {}};
  out.test_report = {PreprocessMode::able2rank, "test", {}};

  auto train_rows = pooled_objects(train);
  for (std::size_t k = 0; k < schema.dimension(); ++k) {
    const auto& column = schema[k];
    ColumnReport train_col{column.name, column.kind.type};
    ColumnReport test_col{column.name, column.kind.type};
    if (column.kind.type == FeatureType::binary) {
      train_col.min = test_col.min = 0.0;
      train_col.max = test_col.max = 1.0;
      out.train_report.columns.push_back(train_col);
      out.test_report.columns.push_back(test_col);
      continue;
    }

    auto decision = maybe_log_transform(column_of(train_rows, k));
    auto train_values = std::move(decision.values);
    auto test_values = column_of(test.objects, k);
    if (decision.log_applied) {
      // Test columns follow the training decision; a non-positive value there
      // cannot be logged, so the column is left on its raw scale.
      const bool loggable = std::all_of(test_values.begin(), test_values.end(), [](double v) { return v > 0.0; });
      if (loggable) {
        for (double& v : test_values) v = std::log(v);
      }
      test_col.log_applied = loggable;
    }
    train_col.log_applied = decision.log_applied;

    auto record_range = [](ColumnReport& rep, std::span<const double> values) {
      if (values.empty()) return;
      const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
      rep.min = *lo;
      rep.max = *hi;
    };
    record_range(train_col, train_values);
    record_range(test_col, test_values);

    const auto train_norm = min_max_normalize(train_values);
    const auto test_norm = min_max_normalize(test_values);
    std::size_t offset = 0;
    for (auto& inst : out.train) {
      for (std::size_t r = 0; r < inst.size(); ++r) inst.objects[r][k] = train_norm[offset + r];
      offset += inst.size();
    }
    set_column(out.test.objects, k, test_norm);
    out.train_report.columns.push_back(train_col);
    out.test_report.columns.push_back(test_col);
  }
  return out;
}

PreprocessedSplits standardize_for_baseline(std::span<const RankingInstance> train, const RankingInstance& test) {
  check_compatible(train, test);
  const auto& schema = test.schema;
  PreprocessedSplits out{{train.begin(), train.end()}, test, {}, {}};
  out.train_report = {PreprocessMode::standardize, "train", {}};
  out.test_report = {PreprocessMode::standardize, "test", {}};

  const auto train_rows = pooled_objects(train);
  for (std::size_t k = 0; k < schema.dimension(); ++k) {
    const auto& column = schema[k];
    ColumnReport rep{column.name, column.kind.type};
    if (column.kind.type != FeatureType::binary) {
      const auto values = column_of(train_rows, k);
      if (!values.empty()) rep.mean = mean_of(values);
      double ss = 0.0;
      for (double v : values) ss += (v - rep.mean) * (v - rep.mean);
      rep.sd = (values.size() > 1 && !is_constant(values)) ? std::sqrt(ss / static_cast<double>(values.size() - 1))
                                                            : 0.0;
      auto apply = [&](std::vector<ObjectVector>& rows) {
        for (auto& row : rows) row[k] = rep.sd > 0.0 ? (row[k] - rep.mean) / rep.sd : 0.0;
      };
      for (auto& inst : out.train) apply(inst.objects);
      apply(out.test.objects);
    }
    out.train_report.columns.push_back(rep);
    out.test_report.columns.push_back(rep);
  }
  return out;
}

void write_preprocess_report(std::ostream& out, const PreprocessReport& report) {
  const std::string prefix =
      std::string(report.mode == PreprocessMode::able2rank ? "able2rank" : "standardize") + "." + report.split + ".";
  for (const auto& col : report.columns) {
    const auto key = prefix + col.name + ".";
    out << key << "type=" << type_name(col.type) << '\n';
    if (report.mode == PreprocessMode::able2rank) {
      out << key << "log_applied=" << (col.log_applied ? "true" : "false") << '\n';
      out << key << "min=" << format_real(col.min) << '\n';
      out << key << "max=" << format_real(col.max) << '\n';
    } else if (col.type == FeatureType::binary) {
      out << key << "standardized=false\n";
    } else {
      out << key << "mean=" << format_real(col.mean) << '\n';
      out << key << "sd=" << format_real(col.sd) << '\n';
    }
  }
}

}  // namespace able2rank
