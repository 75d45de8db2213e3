#include "able2rank/format.hpp"

#include <array>
#include <charconv>

namespace able2rank {

std::string format_real(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return ec == std::errc{} ? std::string(buf.data(), ptr) : std::string("nan");
}

std::string format_fixed(double value, int digits) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, digits);
  return ec == std::errc{} ? std::string(buf.data(), ptr) : std::string("nan");
}

}  // namespace able2rank
