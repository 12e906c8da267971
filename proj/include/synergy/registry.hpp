// Closed registry of per-point metrics written to metrics.csv.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "synergy/series.hpp"

namespace synergy::registry {

enum class Group : std::uint8_t { Variability, Association, Events };

struct MetricSpec {
  std::string_view name;
  Group group;
  /// Evaluated at every requested scale; otherwise at `fixed_scale` only.
  bool scaled;
  std::string_view fixed_scale;
  std::string_view description;
};

[[nodiscard]] std::span<const MetricSpec> metrics();
[[nodiscard]] const MetricSpec* find(std::string_view name) noexcept;
[[nodiscard]] std::string_view to_string(Group g) noexcept;
[[nodiscard]] std::optional<Group> parse_group(std::string_view text) noexcept;

/**
 * Expands a selection of metric names, group names and "all" into registry
 * order. Throws InputError on an unknown name.
 */
[[nodiscard]] std::vector<const MetricSpec*> select(std::span<const std::string> selection);

/// Scale keys for scaled metrics; Seasonal expands to the four seasons.
[[nodiscard]] std::vector<series::ScaleKey> expand_scales(std::span<const series::TimeScale> scales);

}  // namespace synergy::registry
