// Small text helpers shared by the file readers and writers.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace synergy::text {

/// Shortest representation that round-trips exactly.
[[nodiscard]] std::string format_double(double v);
[[nodiscard]] std::optional<double> parse_double(std::string_view s) noexcept;
[[nodiscard]] std::string_view trim(std::string_view s) noexcept;
[[nodiscard]] std::vector<std::string_view> split(std::string_view s, char sep);

/// Parses a `# key: value` header line; nullopt when the line is not one.
struct KeyValue {
  std::string key;
  std::string value;
};
[[nodiscard]] std::optional<KeyValue> parse_header_line(std::string_view line);

}  // namespace synergy::text
