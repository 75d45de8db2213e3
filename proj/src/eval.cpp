#include "able2rank/eval.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "able2rank/baseline.hpp"
#include "able2rank/error.hpp"
#include "able2rank/format.hpp"
#include "able2rank/parallel.hpp"

namespace able2rank {

namespace {

// Inversions of `seq`, counted by merge sort.
std::size_t count_inversions(std::vector<std::size_t>& seq, std::vector<std::size_t>& buffer, std::size_t lo,
                             std::size_t hi) {
  if (hi - lo < 2) return 0;
  const auto mid = lo + (hi - lo) / 2;
  auto count = count_inversions(seq, buffer, lo, mid) + count_inversions(seq, buffer, mid, hi);
  std::size_t a = lo;
  std::size_t b = mid;
  std::size_t out = lo;
  while (a < mid && b < hi) {
    if (seq[b] < seq[a]) {
      count += mid - a;
      buffer[out++] = seq[b++];
    } else {
      buffer[out++] = seq[a++];
    }
  }
  while (a < mid) buffer[out++] = seq[a++];
  while (b < hi) buffer[out++] = seq[b++];
  std::copy(buffer.begin() + static_cast<std::ptrdiff_t>(lo), buffer.begin() + static_cast<std::ptrdiff_t>(hi),
            seq.begin() + static_cast<std::ptrdiff_t>(lo));
  return count;
}

// Uniform integer in [0, bound) from raw engine output; the rejection step
// keeps the result identical across standard library implementations.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::mt19937_64::max() - (std::mt19937_64::max() % bound);
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return draw % bound;
}

struct FoldSplit {
  std::vector<RankingInstance> train;
  std::vector<RankingInstance> validation;
};

std::vector<FoldSplit> make_folds(std::span<const RankingInstance> train, std::size_t folds, std::uint64_t seed,
                                  std::size_t repeat) {
  std::vector<FoldSplit> splits(folds);
  if (train.size() == 1) {
    const auto& inst = train.front();
    const auto assignment = fold_assignment(inst.size(), folds, seed, repeat);
    for (std::size_t f = 0; f < folds; ++f) {
      std::vector<std::size_t> in_fold;
      std::vector<std::size_t> out_fold;
      for (std::size_t r = 0; r < inst.size(); ++r) (assignment[r] == f ? in_fold : out_fold).push_back(r);
      splits[f].validation.push_back(select_rows(inst, in_fold));
      splits[f].train.push_back(select_rows(inst, out_fold));
    }
  } else {
    const auto assignment = fold_assignment(train.size(), folds, seed, repeat);
    for (std::size_t f = 0; f < folds; ++f) {
      for (std::size_t m = 0; m < train.size(); ++m) {
        (assignment[m] == f ? splits[f].validation : splits[f].train).push_back(train[m]);
      }
    }
  }
  return splits;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string loss_text(const std::optional<double>& loss, int digits) {
  return loss ? format_fixed(*loss, digits) : std::string();
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"') quoted.push_back('"');
    quoted.push_back(ch);
  }
  quoted.push_back('"');
  return quoted;
}

}  // namespace

double ranking_loss(const Ranking& pi, const Ranking& pi_prime) {
  const auto n = pi.size();
  if (pi_prime.size() != n) throw validation_error("ranking_loss: rankings differ in length");
  if (n < 2) throw validation_error("ranking_loss: need at least two items");
  // Walk the items in pi's order; inversions in pi_prime's positions are the
  // discordant pairs.
  std::vector<std::size_t> seq(n);
  for (std::size_t p = 0; p < n; ++p) seq[p] = pi_prime.positions()[pi.order()[p]];
  std::vector<std::size_t> buffer(n);
  const auto discordant = count_inversions(seq, buffer, 0, n);
  return static_cast<double>(discordant) / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

std::vector<ProportionMeasure> default_measures(double epsilon) {
  return {make_measure(MeasureKind::arithmetic),        make_measure(MeasureKind::arithmetic_strict),
          make_measure(MeasureKind::geometric),         make_measure(MeasureKind::min_max),
          make_measure(MeasureKind::approx_equal, epsilon), make_measure(MeasureKind::approx_equal_graded, epsilon)};
}

std::vector<std::size_t> default_ks() { return {10, 15, 20}; }

std::vector<std::size_t> fold_assignment(std::size_t items, std::size_t folds, std::uint64_t seed,
                                         std::size_t repeat) {
  if (folds == 0) throw validation_error("fold_assignment: need at least one fold");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(repeat), static_cast<std::uint32_t>(std::uint64_t{repeat} >> 32)};
  std::mt19937_64 rng(seq);
  std::vector<std::size_t> perm(items);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = items; i > 1; --i) {
    std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
  }
  std::vector<std::size_t> assignment(items);
  for (std::size_t p = 0; p < items; ++p) assignment[perm[p]] = p % folds;
  return assignment;
}

GridSearchResult grid_search_cv(std::span<const RankingInstance> train, std::span<const ProportionMeasure> measures,
                                std::span<const std::size_t> ks, const CvOptions& cv,
                                const Able2RankOptions& options) {
  if (measures.empty() || ks.empty()) throw validation_error("grid_search_cv: empty grid");
  if (std::find(ks.begin(), ks.end(), std::size_t{0}) != ks.end()) {
    throw validation_error("grid_search_cv: k values must be positive");
  }
  if (train.empty()) throw validation_error("grid_search_cv: no training data");
  if (measures.size() == 1 && ks.size() == 1) return {measures.front(), ks.front(), {}};
  if (cv.folds < 2 || cv.repeats < 1) throw validation_error("grid_search_cv: need folds >= 2 and repeats >= 1");
  if (train.size() == 1) {
    if (train.front().size() < 2 * cv.folds) {
      throw validation_error("grid_search_cv: training ranking needs at least " + std::to_string(2 * cv.folds) +
                             " objects for " + std::to_string(cv.folds) + "-fold cross-validation");
    }
  } else if (train.size() < cv.folds) {
    throw validation_error("grid_search_cv: fewer training rankings than folds");
  }

  const auto cells = measures.size() * ks.size();
  const auto units = cv.repeats * cv.folds;
  std::vector<std::vector<double>> unit_losses(units);
  Able2RankOptions inner = options;
  inner.app.threads = 1;

  parallel_for(units, cv.threads, [&](std::size_t unit) {
    const auto repeat = unit / cv.folds;
    const auto fold = unit % cv.folds;
    auto split = std::move(make_folds(train, cv.folds, cv.seed, repeat)[fold]);
    std::vector<double> losses(cells, 0.0);
    for (const auto& validation : split.validation) {
      const auto prepared = preprocess_for_able2rank(split.train, validation);
      const auto grid = able2rank_predict_grid(prepared.train, prepared.test.objects, measures, ks, inner);
      const auto truth = Ranking::identity(validation.size());
      for (std::size_t m = 0; m < measures.size(); ++m) {
        for (std::size_t k = 0; k < ks.size(); ++k) losses[m * ks.size() + k] += ranking_loss(grid[m][k], truth);
      }
    }
    for (double& loss : losses) loss /= static_cast<double>(split.validation.size());
    unit_losses[unit] = std::move(losses);
  });

  GridSearchResult result;
  result.cells.reserve(cells);
  for (std::size_t m = 0; m < measures.size(); ++m) {
    for (std::size_t k = 0; k < ks.size(); ++k) {
      double sum = 0.0;
      for (const auto& losses : unit_losses) sum += losses[m * ks.size() + k];
      result.cells.push_back({measures[m], ks[k], sum / static_cast<double>(units)});
    }
  }
  const GridCell* best = &result.cells.front();
  for (const auto& cell : result.cells) {
    // Cells are visited in measure order, so only a strictly better loss or an
    // equal loss with a smaller k replaces the incumbent.
    if (cell.mean_loss < best->mean_loss || (cell.mean_loss == best->mean_loss && cell.k < best->k)) best = &cell;
  }
  result.best_measure = best->measure;
  result.best_k = best->k;
  return result;
}

ExperimentReport run_experiment(std::span<const RankingInstance> train, const RankingInstance& test,
                                const ExperimentConfig& config) {
  if (train.empty()) throw validation_error("run_experiment: no training data");
  if (test.size() < 2) throw validation_error("run_experiment: test ranking needs at least two objects");
  ExperimentReport report;
  std::string train_names;
  for (const auto& inst : train) train_names += (train_names.empty() ? "" : "+") + inst.name;
  report.experiment = train_names + " → " + test.name;
  report.svm_loss = config.svm_loss;
  const auto truth = Ranking::identity(test.size());

  if (config.run_able2rank) {
    auto start = std::chrono::steady_clock::now();
    report.grid = grid_search_cv(train, config.measures, config.ks, config.cv, config.able2rank);
    report.timings.grid_search_seconds = seconds_since(start);

    start = std::chrono::steady_clock::now();
    auto prepared = preprocess_for_able2rank(train, test);
    Able2RankOptions final_options = config.able2rank;
    final_options.app.threads = config.cv.threads;
    report.able2rank_ranking = able2rank_predict(prepared.train, prepared.test.objects, report.grid->best_measure,
                                                 report.grid->best_k, final_options);
    report.able2rank_loss = ranking_loss(report.able2rank_ranking, truth);
    report.preprocessing.push_back(std::move(prepared.train_report));
    report.preprocessing.push_back(std::move(prepared.test_report));
    report.timings.able2rank_seconds = seconds_since(start);
  }

  if (config.run_err) {
    const auto start = std::chrono::steady_clock::now();
    auto prepared = standardize_for_baseline(train, test);
    const auto model = err_fit(prepared.train);
    report.err_ranking = err_predict(model, prepared.test.objects);
    report.err_loss = ranking_loss(report.err_ranking, truth);
    report.preprocessing.push_back(std::move(prepared.train_report));
    report.preprocessing.push_back(std::move(prepared.test_report));
    report.timings.err_seconds = seconds_since(start);
  }
  return report;
}

void write_report_csv(std::ostream& out, std::span<const ExperimentReport> reports) {
  out << "experiment,v*,k*,able2rank,err,svm\n";
  for (const auto& r : reports) {
    out << csv_field(r.experiment) << ',' << (r.grid ? csv_field(to_string(r.grid->best_measure)) : "") << ','
        << (r.grid ? std::to_string(r.grid->best_k) : "") << ',' << loss_text(r.able2rank_loss, 6) << ','
        << loss_text(r.err_loss, 6) << ',' << loss_text(r.svm_loss, 6) << '\n';
  }
}

void write_report_table(std::ostream& out, std::span<const ExperimentReport> reports, bool with_timings) {
  std::vector<std::vector<std::string>> rows{{"experiment", "v*", "k*", "able2rank", "err", "svm"}};
  for (const auto& r : reports) {
    rows.push_back({r.experiment, r.grid ? to_string(r.grid->best_measure) : "-",
                    r.grid ? std::to_string(r.grid->best_k) : "-", r.able2rank_loss ? loss_text(r.able2rank_loss, 3) : "-",
                    r.err_loss ? loss_text(r.err_loss, 3) : "-", r.svm_loss ? loss_text(r.svm_loss, 3) : "-"});
  }
  // Width in code points, so the UTF-8 arrow counts once.
  auto width = [](const std::string& s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
  };
  std::vector<std::size_t> widths(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], width(row[c]));
  }
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << row[c];
      if (c + 1 < row.size()) out << std::string(widths[c] - width(row[c]) + 2, ' ');
    }
    out << '\n';
  }
  if (with_timings) {
    for (const auto& r : reports) {
      out << r.experiment << ": grid search " << format_fixed(r.timings.grid_search_seconds, 3) << " s, able2rank "
          << format_fixed(r.timings.able2rank_seconds, 3) << " s, err " << format_fixed(r.timings.err_seconds, 3)
          << " s\n";
    }
  }
}

void write_cv_table(std::ostream& out, const GridSearchResult& grid) {
  out << "measure,k,mean_loss\n";
  for (const auto& cell : grid.cells) {
    out << to_string(cell.measure) << ',' << cell.k << ',' << format_fixed(cell.mean_loss, 6) << '\n';
  }
}

}  // namespace able2rank
