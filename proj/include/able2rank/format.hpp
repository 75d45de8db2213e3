#pragma once

#include <string>

namespace able2rank {

/// Shortest decimal text that round-trips to the same double.
std::string format_real(double value);

/// Fixed-point text with `digits` decimals.
std::string format_fixed(double value, int digits);

}  // namespace able2rank
