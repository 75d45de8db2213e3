// Command-line driver: `able2rank rank ...` runs a TRAIN -> TEST experiment,
// `able2rank selftest` runs the embedded property suite.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "able2rank/baseline.hpp"
#include "able2rank/dataset.hpp"
#include "able2rank/error.hpp"
#include "able2rank/eval.hpp"
#include "able2rank/pairwise.hpp"
#include "able2rank/preprocess.hpp"
#include "able2rank/selftest.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kIo = 3,
  kParse = 4,
  kValidation = 5,
};

struct RunConfig {
  std::vector<std::string> train_paths;
  std::vector<std::string> schema_paths;
  std::string test_path;
  std::string test_schema_path;
  std::vector<std::string> methods{"able2rank", "err"};
  std::vector<std::string> measures{"A", "A-strict", "G", "MM", "AE", "AE-graded"};
  std::vector<std::size_t> ks{10, 15, 20};
  double epsilon = able2rank::kDefaultEpsilon;
  std::uint64_t seed = 42;
  std::size_t folds = 2;
  std::size_t repeats = 5;
  double btl_tol = 1e-8;
  std::size_t btl_max_iter = 10000;
  double smoothing = 0.1;
  bool min_aggregation = false;
  std::string out_path;
  std::string dump_preprocess;
  std::string dump_support;
  std::string dump_cv;
  std::optional<double> svm_loss;
  std::size_t threads = 0;
  bool timings = false;
  int verbosity = 0;
};

std::size_t threads_from_env() {
  const char* value = std::getenv("ABLE2RANK_THREADS");
  if (value == nullptr || *value == '\0') return 0;
  try {
    return static_cast<std::size_t>(std::stoul(value));
  } catch (const std::exception&) {
    throw able2rank::validation_error(std::string("ABLE2RANK_THREADS is not a number: '") + value + "'");
  }
}

// Writes through `write` to stdout for "-" and to the named file otherwise.
template <typename Write>
void emit(const std::string& path, Write&& write) {
  if (path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw able2rank::io_error("cannot write '" + path + "'");
  write(file);
  if (!file) throw able2rank::io_error("failed writing '" + path + "'");
}

int cmd_rank(const RunConfig& cfg, bool dump_preprocess_requested) {
  using namespace able2rank;
  if (cfg.schema_paths.size() != 1 && cfg.schema_paths.size() != cfg.train_paths.size()) {
    throw validation_error("give one --schema for all files or one per --train file");
  }
  std::vector<RankingInstance> train;
  for (std::size_t t = 0; t < cfg.train_paths.size(); ++t) {
    const auto& schema = cfg.schema_paths.size() == 1 ? cfg.schema_paths.front() : cfg.schema_paths[t];
    train.push_back(load_dataset(cfg.train_paths[t], schema));
  }
  const auto test_schema = cfg.test_schema_path.empty() ? cfg.schema_paths.front() : cfg.test_schema_path;
  const auto test = load_dataset(cfg.test_path, test_schema);

  ExperimentConfig config;
  config.measures.clear();
  for (const auto& name : cfg.measures) config.measures.push_back(parse_measure(name, cfg.epsilon));
  config.ks = cfg.ks;
  for (auto k : config.ks) {
    if (k == 0) throw validation_error("--ks entries must be positive");
  }
  config.cv.folds = cfg.folds;
  config.cv.repeats = cfg.repeats;
  config.cv.seed = cfg.seed;
  config.cv.threads = cfg.threads != 0 ? cfg.threads : threads_from_env();
  config.able2rank.btl.tol = cfg.btl_tol;
  config.able2rank.btl.max_iter = cfg.btl_max_iter;
  config.able2rank.btl.smoothing = cfg.smoothing;
  config.able2rank.app.aggregation = cfg.min_aggregation ? Aggregation::minimum : Aggregation::mean;
  config.run_able2rank = false;
  config.run_err = false;
  for (const auto& method : cfg.methods) {
    if (method == "able2rank") {
      config.run_able2rank = true;
    } else if (method == "err") {
      config.run_err = true;
    } else {
      throw validation_error("unknown method '" + method + "' (expected able2rank or err)");
    }
  }
  config.svm_loss = cfg.svm_loss;

  const auto report = run_experiment(train, test, config);
  const std::span<const ExperimentReport> reports(&report, 1);
  write_report_table(std::cout, reports, cfg.timings);
  if (cfg.verbosity > 0 && report.grid && !report.grid->cells.empty()) {
    std::cout << '\n';
    write_cv_table(std::cout, *report.grid);
  }
  if (!cfg.out_path.empty()) emit(cfg.out_path, [&](std::ostream& os) { write_report_csv(os, reports); });
  if (!cfg.dump_cv.empty() && report.grid) emit(cfg.dump_cv, [&](std::ostream& os) { write_cv_table(os, *report.grid); });
  if (dump_preprocess_requested) {
    emit(cfg.dump_preprocess.empty() ? "-" : cfg.dump_preprocess, [&](std::ostream& os) {
      for (const auto& rep : report.preprocessing) write_preprocess_report(os, rep);
    });
  }
  if (!cfg.dump_support.empty()) {
    if (!report.grid) throw validation_error("--dump-support needs the able2rank method");
    const auto prepared = preprocess_for_able2rank(train, test);
    AppOptions app_options = config.able2rank.app;
    app_options.threads = config.cv.threads;
    const auto lists = app(extract_pairs(prepared.train), prepared.test.objects, report.grid->best_measure, app_options);
    emit(cfg.dump_support, [&](std::ostream& os) { write_support_lists(os, lists); });
  }
  return kOk;
}

int cmd_selftest() {
  const auto results = able2rank::run_selftest();
  return able2rank::print_selftest(std::cout, results) ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"able2rank: analogy-based object ranking"};
  app.require_subcommand(1);

  RunConfig cfg;
  auto* rank = app.add_subcommand("rank", "Grid-search on TRAIN, predict TEST, report ranking losses");
  rank->add_option("--train", cfg.train_paths, "Training ranking CSV (repeatable)")->required()->expected(1, -1);
  rank->add_option("--schema", cfg.schema_paths, "Schema file (one for all, or one per --train)")
      ->required()
      ->expected(1, -1);
  rank->add_option("--test", cfg.test_path, "Test ranking CSV")->required();
  rank->add_option("--test-schema", cfg.test_schema_path, "Schema of the test file (default: first --schema)");
  rank->add_option("--methods", cfg.methods, "Methods to evaluate: able2rank, err")->delimiter(',')->capture_default_str();
  rank->add_option("--measures", cfg.measures, "Analogy measures: A,A-strict,G,MM,AE[:eps=x],AE-graded[:eps=x]")
      ->delimiter(',')
      ->capture_default_str();
  rank->add_option("--ks", cfg.ks, "Candidate k values")->delimiter(',')->capture_default_str();
  rank->add_option("--epsilon", cfg.epsilon, "Default epsilon of the AE measures")->capture_default_str();
  rank->add_option("--seed", cfg.seed, "Seed of the cross-validation folds")->capture_default_str();
  rank->add_option("--folds", cfg.folds, "Cross-validation folds")->capture_default_str();
  rank->add_option("--repeats", cfg.repeats, "Cross-validation repeats")->capture_default_str();
  rank->add_option("--btl-tol", cfg.btl_tol, "BTL convergence tolerance")->capture_default_str();
  rank->add_option("--btl-max-iter", cfg.btl_max_iter, "BTL iteration limit")->capture_default_str();
  rank->add_option("--smoothing", cfg.smoothing, "Count added to every comparison before the BTL fit")
      ->capture_default_str();
  rank->add_flag("--min-aggregation", cfg.min_aggregation, "Aggregate feature degrees by minimum instead of mean");
  rank->add_option("--out", cfg.out_path, "Write the report as CSV");
  auto* dump_pre = rank->add_option("--dump-preprocess", cfg.dump_preprocess,
                                    "Write the per-column preprocessing report (stdout when no path is given)")
                       ->expected(0, 1);
  rank->add_option("--dump-support", cfg.dump_support, "Write the support lists of the final prediction as CSV");
  rank->add_option("--dump-cv", cfg.dump_cv, "Write the cross-validation table as CSV");
  rank->add_option("--svm", cfg.svm_loss, "Externally computed Ranking SVM loss for the report");
  rank->add_option("--threads", cfg.threads, "Worker threads (default: $ABLE2RANK_THREADS or all cores)");
  rank->add_flag("--timings", cfg.timings, "Print per-phase timings");
  rank->add_flag("-v,--verbose", cfg.verbosity, "Print the cross-validation table");

  app.add_subcommand("selftest", "Run the embedded property suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (rank->parsed()) return cmd_rank(cfg, dump_pre->count() > 0);
    return cmd_selftest();
  } catch (const able2rank::io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const able2rank::parse_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  } catch (const able2rank::validation_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}
