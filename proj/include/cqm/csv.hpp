#pragma once

#include <charconv>
#include <cmath>
#include <optional>
#include <string>

namespace cqm::csv {

// 12 significant digits, independent of the global locale.
inline std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 12);
  return std::string(buffer, result.ptr);
}

// Empty field for missing values.
inline std::string format_field(const std::optional<double>& value) {
  return value ? format_number(*value) : std::string{};
}

}  // namespace cqm::csv
