/**
 * @file series.hpp
 * @brief Hourly time axis, resource series, calendar partitioning and time-scale aggregation.
 */
#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace synergy::series {

using Hour = std::chrono::sys_time<std::chrono::hours>;

struct CivilHour {
  int year{};
  unsigned month{};  // 1..12
  unsigned day{};    // 1..31
  unsigned hour{};   // 0..23
};

[[nodiscard]] CivilHour to_civil(Hour h);
/// Throws DomainError for an invalid calendar date or hour.
[[nodiscard]] Hour from_civil(int year, unsigned month, unsigned day, unsigned hour = 0);
[[nodiscard]] bool is_leap_year(int year) noexcept;
[[nodiscard]] unsigned days_in_month(int year, unsigned month) noexcept;

/// `YYYY-MM-DDTHH:00:00Z`
[[nodiscard]] std::string format_iso(Hour h);
/**
 * Parses `YYYY-MM-DDTHH[:MM[:SS]]` with an optional `Z` or `+00:00` suffix.
 * A space may replace the `T`. Minutes and seconds must be zero.
 * Returns nullopt on any syntax or range error.
 */
[[nodiscard]] std::optional<Hour> parse_iso(std::string_view text);

/**
 * @brief Gap-free hourly grid starting at a whole UTC hour.
 */
class TimeAxis {
 public:
  TimeAxis() = default;
  TimeAxis(Hour start, std::size_t length) : start_(start), length_(length) {}

  [[nodiscard]] Hour start() const noexcept { return start_; }
  [[nodiscard]] std::size_t size() const noexcept { return length_; }
  [[nodiscard]] bool empty() const noexcept { return length_ == 0; }
  [[nodiscard]] Hour at(std::size_t i) const noexcept { return start_ + std::chrono::hours(static_cast<std::int64_t>(i)); }
  /// One past the last hour.
  [[nodiscard]] Hour end() const noexcept { return at(length_); }

  friend bool operator==(const TimeAxis&, const TimeAxis&) = default;

 private:
  Hour start_{};
  std::size_t length_{0};
};

enum class TimeScale : std::uint8_t { Hourly, Daily, Monthly, Seasonal, Annual };

/// Meteorological seasons; December belongs to the following year's DJF.
enum class Season : std::uint8_t { DJF = 0, MAM = 1, JJA = 2, SON = 3 };

inline constexpr Season kSeasons[] = {Season::DJF, Season::MAM, Season::JJA, Season::SON};

[[nodiscard]] std::string_view to_string(TimeScale s) noexcept;
[[nodiscard]] std::string_view to_string(Season s) noexcept;
[[nodiscard]] std::optional<TimeScale> parse_time_scale(std::string_view text) noexcept;
[[nodiscard]] Season season_of_month(unsigned month) noexcept;

/**
 * @brief A time scale, optionally restricted to one season.
 *
 * `{Seasonal, DJF}` selects the yearly sequence of winter means; `{Seasonal}`
 * without a season selects every seasonal mean in chronological order.
 */
struct ScaleKey {
  TimeScale scale{TimeScale::Hourly};
  std::optional<Season> season{};

  /// "hourly", "annual", "seasonal", "seasonal-DJF", ...
  [[nodiscard]] std::string label() const;
  friend bool operator==(const ScaleKey&, const ScaleKey&) = default;
};

/// Inverse of ScaleKey::label().
[[nodiscard]] std::optional<ScaleKey> parse_scale_key(std::string_view text) noexcept;

/**
 * @brief One calendar bucket of an axis: hours [begin, end).
 *
 * `year` is the season-year for seasonal buckets. `sub` is the month (1..12),
 * the season index (0..3), or the day of month; 0 for annual buckets.
 */
struct Period {
  std::string label;
  int year{};
  unsigned month{};
  unsigned sub{};
  std::size_t begin{};
  std::size_t end{};
  std::size_t expected_hours{};

  [[nodiscard]] std::size_t hours() const noexcept { return end - begin; }
  [[nodiscard]] bool complete() const noexcept { return hours() == expected_hours; }
};

/**
 * Partitions the axis into consecutive calendar buckets at `scale`
 * (Hourly is not a valid partition scale). Every hour lands in exactly one
 * bucket; leading/trailing buckets may be incomplete.
 */
[[nodiscard]] std::vector<Period> partition(const TimeAxis& axis, TimeScale scale);

/// Partition into (season-year, season) buckets.
[[nodiscard]] std::vector<Period> season_partition(const TimeAxis& axis);

/**
 * @brief Per-period means of an hourly quantity over complete calendar periods.
 */
struct AggregatedSeries {
  TimeScale scale{TimeScale::Annual};
  std::vector<Period> periods;
  std::vector<double> values;
  /// Labels of incomplete periods that were dropped.
  std::vector<std::string> dropped;

  [[nodiscard]] std::vector<std::string> labels() const;
  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
};

/**
 * Means over calendar-complete periods. Throws InsufficientSpan when the
 * series holds no complete period, DomainError for Hourly or a length mismatch.
 */
[[nodiscard]] AggregatedSeries aggregate(std::span<const double> hourly, const TimeAxis& axis, TimeScale scale);

/**
 * The sample a statistic is computed on at a given scale: the hourly values
 * themselves, the complete-period means, or one season's yearly means.
 */
[[nodiscard]] std::vector<double> values_at(std::span<const double> hourly, const TimeAxis& axis, const ScaleKey& key);

/// Converts per-hour accumulated energy (J/m^2) to mean irradiance (W/m^2).
/// Throws InputError naming the first negative row.
[[nodiscard]] std::vector<double> normalize_irradiance(std::span<const double> joules_per_m2);

enum class IrradianceUnit : std::uint8_t { JoulesPerM2, WattsPerM2 };
enum class TemperatureUnit : std::uint8_t { Celsius, Kelvin };

/// Provenance of unit conversions applied during ingestion.
struct SeriesMetadata {
  bool irradiance_converted{false};
  bool temperature_converted{false};
  std::string source;
};

/**
 * @brief Aligned hourly resource columns.
 *
 * u100: wind speed at 100 m (m/s); ssrd: surface irradiance (W/m^2);
 * t2m: air temperature (degC); u10: wind speed at 10 m (m/s).
 * Immutable after construction.
 */
class ResourceSeries {
 public:
  /// Validates lengths, finiteness and sign constraints; throws InputError.
  ResourceSeries(TimeAxis axis, std::vector<double> u100, std::vector<double> ssrd, std::vector<double> t2m,
                 std::vector<double> u10, SeriesMetadata metadata = {});

  [[nodiscard]] const TimeAxis& axis() const noexcept { return axis_; }
  [[nodiscard]] std::size_t size() const noexcept { return axis_.size(); }
  [[nodiscard]] std::span<const double> u100() const noexcept { return u100_; }
  [[nodiscard]] std::span<const double> ssrd() const noexcept { return ssrd_; }
  [[nodiscard]] std::span<const double> t2m() const noexcept { return t2m_; }
  [[nodiscard]] std::span<const double> u10() const noexcept { return u10_; }
  [[nodiscard]] const SeriesMetadata& metadata() const noexcept { return metadata_; }

 private:
  TimeAxis axis_;
  std::vector<double> u100_;
  std::vector<double> ssrd_;
  std::vector<double> t2m_;
  std::vector<double> u10_;
  SeriesMetadata metadata_;
};

}  // namespace synergy::series
