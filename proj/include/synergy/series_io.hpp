#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "synergy/series.hpp"

namespace synergy::series {

/// Unit declarations; a series file's own `# key: value` lines override manifest-level ones.
struct UnitDeclarations {
  std::optional<IrradianceUnit> ssrd;
  std::optional<TemperatureUnit> t2m;
};

[[nodiscard]] std::optional<IrradianceUnit> parse_irradiance_unit(std::string_view text) noexcept;
[[nodiscard]] std::optional<TemperatureUnit> parse_temperature_unit(std::string_view text) noexcept;
[[nodiscard]] std::string_view to_string(IrradianceUnit u) noexcept;
[[nodiscard]] std::string_view to_string(TemperatureUnit u) noexcept;

/**
 * Reads a per-point series in the `timestamp,u100,ssrd,t2m,u10` layout.
 *
 * Leading `# ssrd_units: J_per_m2|W_per_m2` and `# t2m_units: C|K` lines are
 * honoured. Both units must be declared either in the file or in `defaults`.
 * Timestamps must be strictly hourly without gaps. Errors name the line.
 */
[[nodiscard]] ResourceSeries read_series_csv(std::istream& in, const UnitDeclarations& defaults,
                                             const std::string& source = "<stream>");
[[nodiscard]] ResourceSeries read_series_csv(const std::filesystem::path& path, const UnitDeclarations& defaults = {});

/// Writes W/m^2 irradiance and Celsius temperatures with matching unit declarations.
void write_series_csv(std::ostream& out, const ResourceSeries& series);
void write_series_csv(const std::filesystem::path& path, const ResourceSeries& series);

}  // namespace synergy::series
