// Synthetic hourly resource series for tests, fixtures and the shipped example.
#pragma once

#include <cstdint>
#include <filesystem>

#include "synergy/manifest.hpp"
#include "synergy/series.hpp"

namespace synergy::synthetic {

struct PointSpec {
  int start_year{2000};
  int years{2};
  double lat{38.0};
  double lon{15.0};
  /// Long-run mean 100 m wind speed before the seasonal cycle (m/s).
  double mean_wind{7.0};
  /// Lag-one autocorrelation of the hourly Gaussian components.
  double persistence{0.97};
  /// Fraction of clear-sky irradiance that a fully cloudy day removes.
  double cloudiness{0.5};
  std::uint64_t seed{1};
};

/**
 * Rayleigh-distributed winds with persistence and a winter maximum,
 * clear-sky irradiance from solar geometry damped by a daily cloud factor,
 * and a seasonal/diurnal air temperature.
 */
[[nodiscard]] series::ResourceSeries generate(const PointSpec& spec);

struct GridSpec {
  std::size_t rows{10};
  std::size_t cols{10};
  double lat0{35.0};  // southernmost row
  double lon0{0.0};   // westernmost column
  double step{0.5};
  int start_year{2000};
  int years{1};
  std::uint64_t seed{42};
};

/// Writes `manifest.csv` and one series file per point under `dir`; returns the loaded manifest.
manifest::GridManifest write_grid(const std::filesystem::path& dir, const GridSpec& spec);

}  // namespace synergy::synthetic
