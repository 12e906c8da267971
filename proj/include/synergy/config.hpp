/**
 * @file config.hpp
 * @brief Pipeline configuration: a flat `key = value` text file.
 *
 * Lines starting with `#` are comments. Unknown keys are rejected. See
 * config_reference() for every key with its default.
 */
#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "synergy/events.hpp"
#include "synergy/power.hpp"
#include "synergy/series.hpp"

namespace synergy::config {

enum class OutputFormat : std::uint8_t { Csv, CsvRaster };

struct PipelineConfig {
  events::Thresholds thresholds;
  power::AirDensity air_density;
  power::DeviceConfig device;
  /// Metric names and/or group names ("variability", "association", "events"); "all" by default.
  std::vector<std::string> metrics{"all"};
  std::vector<series::TimeScale> scales{series::TimeScale::Hourly, series::TimeScale::Seasonal,
                                        series::TimeScale::Annual};
  std::filesystem::path output_dir{"out"};
  unsigned workers{1};
  /// Point ids that get a monthly energy table; nullopt means every point.
  std::optional<std::vector<std::string>> energy_points;
  OutputFormat format{OutputFormat::Csv};

  /// Throws InputError when a field violates its invariant.
  void validate() const;
};

/// Parses a config; relative output_dir stays relative. Errors name the line.
[[nodiscard]] PipelineConfig parse_config(std::istream& in, const std::string& source = "<config>");
[[nodiscard]] PipelineConfig load_config(const std::filesystem::path& path);

/// Human-readable list of keys, defaults and where the defaults come from.
[[nodiscard]] std::string config_reference();

[[nodiscard]] std::optional<OutputFormat> parse_output_format(std::string_view text) noexcept;

}  // namespace synergy::config
