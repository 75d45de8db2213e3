#include "able2rank/selftest.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>

#include "able2rank/aggregate.hpp"
#include "able2rank/eval.hpp"
#include "able2rank/format.hpp"

namespace able2rank {

namespace {

constexpr std::array<std::array<int, 4>, 6> kBooleanTable{{
    {0, 0, 0, 0},
    {0, 0, 1, 1},
    {0, 1, 0, 1},
    {1, 0, 1, 0},
    {1, 1, 0, 0},
    {1, 1, 1, 1},
}};

bool implies(bool x, bool y) { return !x || y; }

bool in_table(int a, int b, int c, int d) {
  return std::find(kBooleanTable.begin(), kBooleanTable.end(), std::array<int, 4>{a, b, c, d}) != kBooleanTable.end();
}

PropertyResult check_boolean_table() {
  PropertyResult r{"boolean proportion matches the six-pattern table and its logical formula", true, {}};
  for (int bits = 0; bits < 16; ++bits) {
    const bool a = bits & 8, b = bits & 4, c = bits & 2, d = bits & 1;
    const bool formula = (implies(a, b) == implies(c, d)) && (implies(b, a) == implies(d, c));
    const bool value = boolean_proportion(a, b, c, d);
    if (value != in_table(a, b, c, d) || value != formula) {
      r.passed = false;
      r.detail = "pattern " + std::to_string(a) + std::to_string(b) + std::to_string(c) + std::to_string(d);
      break;
    }
  }
  return r;
}

PropertyResult check_boolean_reduction(const ScalarMeasureFn& scalar) {
  PropertyResult r{"A, A-strict and MM reduce to the Boolean proportion on {0,1}", true, {}};
  for (auto kind : {MeasureKind::arithmetic, MeasureKind::arithmetic_strict, MeasureKind::min_max}) {
    const auto m = make_measure(kind);
    for (int bits = 0; bits < 16 && r.passed; ++bits) {
      const int a = (bits >> 3) & 1, b = (bits >> 2) & 1, c = (bits >> 1) & 1, d = bits & 1;
      const double expected = boolean_proportion(a, b, c, d) ? 1.0 : 0.0;
      if (scalar(m, a, b, c, d) != expected) {
        r.passed = false;
        r.detail = to_string(m) + " on " + std::to_string(a) + std::to_string(b) + std::to_string(c) + std::to_string(d);
      }
    }
  }
  return r;
}

template <typename Check>
PropertyResult random_property(std::string name, const SelfTestOptions& options, Check check) {
  PropertyResult r{std::move(name), true, {}};
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& m : default_measures()) {
    for (std::size_t s = 0; s < options.random_samples; ++s) {
      const double a = unit(rng), b = unit(rng), c = unit(rng), d = unit(rng);
      if (!check(m, a, b, c, d)) {
        r.passed = false;
        r.detail = to_string(m) + " at (" + format_real(a) + ", " + format_real(b) + ", " + format_real(c) + ", " +
                   format_real(d) + ")";
        return r;
      }
    }
  }
  return r;
}

PropertyResult check_btl_two_item() {
  PropertyResult r{"BTL two-item fit recovers the win ratio", true, {}};
  ComparisonMatrix counts(2, 4);
  counts(0, 1) = 3.0;
  counts(1, 0) = 1.0;
  BtlOptions options;
  options.smoothing = 0.0;
  const auto fit = btl_fit(counts, options);
  const double ratio = fit.theta[0] / fit.theta[1];
  if (!fit.converged || std::abs(ratio - 3.0) > 1e-6) {
    r.passed = false;
    r.detail = "theta_1/theta_2 = " + format_real(ratio);
  }
  return r;
}

std::size_t brute_force_discordant(const Ranking& p, const Ranking& q) {
  std::size_t count = 0;
  const auto n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (p.positions()[i] < p.positions()[j] && q.positions()[i] > q.positions()[j]) ++count;
    }
  }
  return count;
}

PropertyResult check_loss_oracle() {
  PropertyResult r{"ranking loss equals brute-force inversion counting (n <= 5)", true, {}};
  for (std::size_t n = 2; n <= 5; ++n) {
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
      perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (const auto& a : perms) {
      const auto p = Ranking::from_order(a);
      for (const auto& b : perms) {
        const auto q = Ranking::from_order(b);
        const double expected = static_cast<double>(brute_force_discordant(p, q)) / (static_cast<double>(n * (n - 1)) / 2.0);
        if (ranking_loss(p, q) != expected) {
          r.passed = false;
          r.detail = "n = " + std::to_string(n);
          return r;
        }
      }
    }
  }
  return r;
}

}  // namespace

std::vector<PropertyResult> run_selftest(const SelfTestOptions& options) {
  const auto& v = options.scalar;
  std::vector<PropertyResult> results;
  results.push_back(check_boolean_table());
  results.push_back(check_boolean_reduction(v));
  results.push_back(random_property("degrees lie in [0,1]", options, [&](const auto& m, double a, double b, double c, double d) {
    const double x = v(m, a, b, c, d);
    return x >= 0.0 && x <= 1.0;
  }));
  results.push_back(random_property("reflexivity v(a,b,a,b) = 1 (G: ab > 0)", options,
                                    [&](const auto& m, double a, double b, double, double) {
                                      if (m.kind == MeasureKind::geometric && !(a * b > 0.0)) return true;
                                      return std::abs(v(m, a, b, a, b) - 1.0) <= 1e-12;
                                    }));
  results.push_back(random_property("symmetry v(a,b,c,d) = v(c,d,a,b)", options,
                                    [&](const auto& m, double a, double b, double c, double d) {
                                      return v(m, a, b, c, d) == v(m, c, d, a, b);
                                    }));
  results.push_back(check_btl_two_item());
  results.push_back(check_loss_oracle());
  return results;
}

bool print_selftest(std::ostream& out, const std::vector<PropertyResult>& results) {
  std::size_t failed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "PASS  " : "FAIL  ") << r.name;
    if (!r.passed && !r.detail.empty()) out << " (" << r.detail << ")";
    out << '\n';
    if (!r.passed) ++failed;
  }
  out << results.size() - failed << "/" << results.size() << " properties passed\n";
  return failed == 0;
}

}  // namespace able2rank
