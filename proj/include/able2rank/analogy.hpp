#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>

namespace able2rank {

/// The six graded analogical-proportion measures.
enum class MeasureKind {
  arithmetic,             // A
  arithmetic_strict,      // A-strict
  geometric,              // G
  min_max,                // MM
  approx_equal,           // AE
  approx_equal_graded,    // AE-graded
};

inline constexpr double kDefaultEpsilon = 0.1;

struct ProportionMeasure {
  MeasureKind kind = MeasureKind::arithmetic;
  /// Approximate-equality threshold; only read by the AE variants.
  double epsilon = kDefaultEpsilon;

  [[nodiscard]] bool uses_epsilon() const noexcept {
    return kind == MeasureKind::approx_equal || kind == MeasureKind::approx_equal_graded;
  }

  friend bool operator==(const ProportionMeasure& lhs, const ProportionMeasure& rhs) {
    return lhs.kind == rhs.kind && (!lhs.uses_epsilon() || lhs.epsilon == rhs.epsilon);
  }
};

/// Validated constructor; epsilon must lie in (0,1] for the AE variants.
ProportionMeasure make_measure(MeasureKind kind, double epsilon = kDefaultEpsilon);

/// Parses `A`, `A-strict`, `G`, `MM`, `AE`, `AE-graded`, the latter two with an
/// optional `:eps=<value>` suffix. `default_epsilon` applies when no suffix is given.
ProportionMeasure parse_measure(std::string_view text, double default_epsilon = kDefaultEpsilon);

/// Canonical name; AE variants always carry their `:eps=` suffix.
std::string to_string(const ProportionMeasure& measure);

/// How per-feature degrees combine into one degree for a vector quadruple.
enum class Aggregation { mean, minimum };

/// Boolean analogical proportion: true on exactly the six patterns
/// 0000, 0011, 0101, 1010, 1100, 1111.
bool boolean_proportion(bool a, bool b, bool c, bool d) noexcept;

/// Graded degree v(a,b,c,d) in [0,1]. Throws validation_error when an input
/// lies outside [0,1].
double scalar_proportion(const ProportionMeasure& measure, double a, double b, double c, double d);

/// Per-feature degrees aggregated over all coordinates. Throws on length
/// mismatch, empty vectors, or entries outside [0,1].
double vector_proportion(const ProportionMeasure& measure, std::span<const double> a, std::span<const double> b,
                         std::span<const double> c, std::span<const double> d,
                         Aggregation aggregation = Aggregation::mean);

namespace detail {

inline int sign(double x) noexcept { return (x > 0.0) - (x < 0.0); }

inline double approx_indicator(double x, double y, double eps) noexcept { return std::abs(x - y) <= eps ? 1.0 : 0.0; }

inline double approx_graded(double x, double y, double eps) noexcept {
  return std::max(1.0 - std::abs(x - y) / eps, 0.0);
}

/// Unchecked scalar kernel; inputs are assumed to lie in [0,1].
template <MeasureKind K>
inline double proportion(double a, double b, double c, double d, [[maybe_unused]] double eps) noexcept {
  if constexpr (K == MeasureKind::arithmetic || K == MeasureKind::arithmetic_strict) {
    const double ab = a - b;
    const double cd = c - d;
    if (sign(ab) == sign(cd)) return 1.0 - std::abs(ab - cd);
    if constexpr (K == MeasureKind::arithmetic) {
      return 1.0 - std::max(std::abs(ab), std::abs(cd));
    } else {
      return 0.0;
    }
  } else if constexpr (K == MeasureKind::geometric) {
    if (sign(a - b) != sign(c - d)) return 0.0;
    const double ad = a * d;
    const double bc = b * c;
    const double hi = std::max(ad, bc);
    return hi > 0.0 ? std::min(ad, bc) / hi : 0.0;
  } else if constexpr (K == MeasureKind::min_max) {
    return 1.0 - std::max(std::abs(std::min(a, d) - std::min(b, c)), std::abs(std::max(a, d) - std::max(b, c)));
  } else if constexpr (K == MeasureKind::approx_equal) {
    return std::max(approx_indicator(a, b, eps) * approx_indicator(c, d, eps),
                    approx_indicator(a, c, eps) * approx_indicator(b, d, eps));
  } else {
    return std::max(approx_graded(a, b, eps) * approx_graded(c, d, eps),
                    approx_graded(a, c, eps) * approx_graded(b, d, eps));
  }
}

/// Calls `fn` with a std::integral_constant for the measure's kind, so hot
/// loops can be instantiated once per measure.
template <typename Fn>
decltype(auto) dispatch(MeasureKind kind, Fn&& fn) {
  switch (kind) {
    case MeasureKind::arithmetic:
      return fn(std::integral_constant<MeasureKind, MeasureKind::arithmetic>{});
    case MeasureKind::arithmetic_strict:
      return fn(std::integral_constant<MeasureKind, MeasureKind::arithmetic_strict>{});
    case MeasureKind::geometric:
      return fn(std::integral_constant<MeasureKind, MeasureKind::geometric>{});
    case MeasureKind::min_max:
      return fn(std::integral_constant<MeasureKind, MeasureKind::min_max>{});
    case MeasureKind::approx_equal:
      return fn(std::integral_constant<MeasureKind, MeasureKind::approx_equal>{});
    case MeasureKind::approx_equal_graded:
      break;
  }
  return fn(std::integral_constant<MeasureKind, MeasureKind::approx_equal_graded>{});
}

}  // namespace detail

}  // namespace able2rank
