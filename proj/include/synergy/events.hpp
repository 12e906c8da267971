/**
 * @file events.hpp
 * @brief Threshold events, complementarity/synergy indices and below-threshold persistence.
 *
 * A resource is available in an hour when its power density is strictly
 * above the threshold; at or below the threshold it is unavailable.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace synergy::events {

struct Thresholds {
  double wp_l{280.0};  // W/m^2, upper limit of the poor wind power class
  double sp_l{125.0};  // W/m^2, upper limit of the poor solar class

  /// Throws InputError on negative or non-finite thresholds.
  void validate() const;
};

/// Per-hour availability flags (1 = above threshold).
struct EventFlags {
  std::vector<std::uint8_t> wind;
  std::vector<std::uint8_t> solar;

  [[nodiscard]] std::size_t size() const noexcept { return wind.size(); }
};

[[nodiscard]] EventFlags classify_events(std::span<const double> wp, std::span<const double> sp, const Thresholds& th);

/**
 * @brief Hour counts of the four cells of the wind/solar event table.
 *
 * The probabilities are count / total, so the partition and XOR identities
 * hold exactly on the counts.
 */
struct EventCounts {
  std::size_t total{};
  std::size_t wind_only{};   // wind on, solar off
  std::size_t solar_only{};  // solar on, wind off
  std::size_t neither{};
  std::size_t both{};

  [[nodiscard]] double wcs() const noexcept { return ratio(wind_only); }
  [[nodiscard]] double scw() const noexcept { return ratio(solar_only); }
  [[nodiscard]] double uws() const noexcept { return ratio(neither); }
  [[nodiscard]] double sws() const noexcept { return ratio(wind_only + solar_only); }
  [[nodiscard]] double both_available() const noexcept { return ratio(both); }

 private:
  [[nodiscard]] double ratio(std::size_t count) const noexcept {
    return total == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(total);
  }
};

/// Throws DomainError on empty flags.
[[nodiscard]] EventCounts indices(const EventFlags& flags);

struct Eligibility {
  double wp_an{};
  double sp_an{};
  bool wind{};
  bool solar{};
};

/// Compares the overall mean WP and SP against the thresholds.
[[nodiscard]] Eligibility eligibility(std::span<const double> wp, std::span<const double> sp, const Thresholds& th);

/// Maximal runs of consecutive zero flags.
struct RunStats {
  std::size_t runs{};
  std::size_t off_hours{};
  std::size_t max{};

  /// Mean run length; nullopt when there are no runs.
  [[nodiscard]] std::optional<double> mean() const noexcept;
  friend bool operator==(const RunStats&, const RunStats&) = default;
};

/// Single streaming pass over the flags.
[[nodiscard]] RunStats off_runs(std::span<const std::uint8_t> available);
/// Runs where neither resource is available.
[[nodiscard]] RunStats joint_off_runs(std::span<const std::uint8_t> wind, std::span<const std::uint8_t> solar);

/// Each stream is present only when its eligibility condition holds (joint: both).
struct DurationStats {
  std::optional<RunStats> wind;
  std::optional<RunStats> solar;
  std::optional<RunStats> joint;
};

[[nodiscard]] DurationStats durations(const EventFlags& flags, const Eligibility& eligible);

struct EventReport {
  EventCounts counts;
  Eligibility eligible;
  DurationStats durations;
};

/// Hours in a common year; event reports need at least this much data.
inline constexpr std::size_t kMinReportHours = 8760;

/// Throws InsufficientSpan below one year of hours, DomainError on misaligned input.
[[nodiscard]] EventReport event_report(std::span<const double> wp, std::span<const double> sp, const Thresholds& th);

}  // namespace synergy::events
