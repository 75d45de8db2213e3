#include "able2rank/analogy.hpp"

#include <array>
#include <charconv>
#include <utility>

#include "able2rank/error.hpp"
#include "able2rank/format.hpp"

namespace able2rank {

namespace {

constexpr std::array<std::pair<std::string_view, MeasureKind>, 6> kNames{{
    {"A", MeasureKind::arithmetic},
    {"A-strict", MeasureKind::arithmetic_strict},
    {"G", MeasureKind::geometric},
    {"MM", MeasureKind::min_max},
    {"AE", MeasureKind::approx_equal},
    {"AE-graded", MeasureKind::approx_equal_graded},
}};

void check_unit(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw validation_error("analogical proportion inputs must lie in [0,1], got " + format_real(x));
  }
}

}  // namespace

ProportionMeasure make_measure(MeasureKind kind, double epsilon) {
  ProportionMeasure m{kind, epsilon};
  if (m.uses_epsilon() && !(epsilon > 0.0 && epsilon <= 1.0)) {
    throw validation_error("epsilon must lie in (0,1], got " + format_real(epsilon));
  }
  return m;
}

ProportionMeasure parse_measure(std::string_view text, double default_epsilon) {
  const auto colon = text.find(':');
  const auto name = text.substr(0, colon);
  const auto it = std::find_if(kNames.begin(), kNames.end(), [&](const auto& e) { return e.first == name; });
  if (it == kNames.end()) throw parse_error("unknown measure '" + std::string(text) + "'");

  double epsilon = default_epsilon;
  if (colon != std::string_view::npos) {
    const auto suffix = text.substr(colon + 1);
    constexpr std::string_view key = "eps=";
    if (it->second != MeasureKind::approx_equal && it->second != MeasureKind::approx_equal_graded) {
      throw parse_error("measure '" + std::string(name) + "' takes no parameters");
    }
    if (suffix.substr(0, key.size()) != key) throw parse_error("expected ':eps=<value>' in '" + std::string(text) + "'");
    const auto value = suffix.substr(key.size());
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), epsilon);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
      throw parse_error("bad epsilon in '" + std::string(text) + "'");
    }
  }
  try {
    return make_measure(it->second, epsilon);
  } catch (const validation_error& e) {
    throw parse_error(std::string(text) + ": " + e.what());
  }
}

std::string to_string(const ProportionMeasure& measure) {
  const auto it = std::find_if(kNames.begin(), kNames.end(), [&](const auto& e) { return e.second == measure.kind; });
  std::string name(it->first);
  if (measure.uses_epsilon()) name += ":eps=" + format_real(measure.epsilon);
  return name;
}

bool boolean_proportion(bool a, bool b, bool c, bool d) noexcept {
  // a differs from b exactly as c differs from d.
  return (a == b && c == d) || (a == c && b == d && a != b);
}

double scalar_proportion(const ProportionMeasure& measure, double a, double b, double c, double d) {
  check_unit(a);
  check_unit(b);
  check_unit(c);
  check_unit(d);
  return detail::dispatch(measure.kind, [&](auto k) { return detail::proportion<decltype(k)::value>(a, b, c, d, measure.epsilon); });
}

double vector_proportion(const ProportionMeasure& measure, std::span<const double> a, std::span<const double> b,
                         std::span<const double> c, std::span<const double> d, Aggregation aggregation) {
  const auto dim = a.size();
  if (b.size() != dim || c.size() != dim || d.size() != dim) {
    throw validation_error("vector_proportion: feature vectors differ in length");
  }
  if (dim == 0) throw validation_error("vector_proportion: empty feature vectors");
  for (auto v : {a, b, c, d}) {
    for (double x : v) check_unit(x);
  }
  return detail::dispatch(measure.kind, [&](auto k) {
    constexpr MeasureKind K = decltype(k)::value;
    if (aggregation == Aggregation::minimum) {
      double lowest = 1.0;
      for (std::size_t i = 0; i < dim; ++i) {
        lowest = std::min(lowest, detail::proportion<K>(a[i], b[i], c[i], d[i], measure.epsilon));
      }
      return lowest;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < dim; ++i) sum += detail::proportion<K>(a[i], b[i], c[i], d[i], measure.epsilon);
    return sum / static_cast<double>(dim);
  });
}

}  // namespace able2rank
