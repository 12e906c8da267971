#include "synergy/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>

#include "synergy/metric.hpp"
#include "synergy/series_io.hpp"
#include "synergy/text.hpp"

namespace synergy::synthetic {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double round2(double v) { return std::round(v * 100.0) / 100.0; }

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double day_of_year(const series::CivilHour& c) {
  static constexpr int kCum[] = {0, 31, 59, 90, 120, 151, 181, 212, 243, 273, 304, 334};
  const int leap = (c.month > 2 && series::is_leap_year(c.year)) ? 1 : 0;
  return kCum[c.month - 1] + static_cast<int>(c.day) + leap;
}

}  // namespace

series::ResourceSeries generate(const PointSpec& spec) {
  if (spec.years < 1) {
    throw DomainError("synthetic series needs at least one year");
  }
  const auto start = series::from_civil(spec.start_year, 1, 1);
  const auto end = series::from_civil(spec.start_year + spec.years, 1, 1);
  const auto n = static_cast<std::size_t>((end - start).count());
  const series::TimeAxis axis(start, n);

  std::mt19937_64 rng(mix(spec.seed));
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit;
  const double phi = spec.persistence;
  const double innov = std::sqrt(1.0 - phi * phi);
  // Rayleigh scale so that the mean speed is mean_wind: mean = sigma sqrt(pi/2).
  const double sigma = spec.mean_wind / std::sqrt(std::numbers::pi / 2.0);

  std::vector<double> u100(n), ssrd(n), t2m(n), u10(n);
  double z1 = gauss(rng), z2 = gauss(rng), tnoise = 0.0;
  double cloud = 1.0;
  const double sin_lat = std::sin(spec.lat * kDeg), cos_lat = std::cos(spec.lat * kDeg);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = series::to_civil(axis.at(i));
    const double doy = day_of_year(c);
    if (i == 0 || c.hour == 0) {
      cloud = 1.0 - spec.cloudiness * unit(rng);
    }
    z1 = phi * z1 + innov * gauss(rng);
    z2 = phi * z2 + innov * gauss(rng);
    const double season = 1.0 + 0.2 * std::cos(2.0 * std::numbers::pi * (doy - 15.0) / 365.25);
    u100[i] = round2(sigma * season * std::sqrt(z1 * z1 + z2 * z2));

    const double decl = 23.44 * kDeg * std::sin(2.0 * std::numbers::pi * (284.0 + doy) / 365.0);
    const double solar_hour = static_cast<double>(c.hour) + 0.5 + spec.lon / 15.0;
    const double hour_angle = 15.0 * kDeg * (solar_hour - 12.0);
    const double cosz = sin_lat * std::sin(decl) + cos_lat * std::cos(decl) * std::cos(hour_angle);
    ssrd[i] = cosz > 0.0 ? round2(1050.0 * cosz * cloud) : 0.0;

    tnoise = 0.95 * tnoise + 0.3 * gauss(rng);
    const double annual = -std::cos(2.0 * std::numbers::pi * (doy - 20.0) / 365.25);
    const double diurnal = std::cos(2.0 * std::numbers::pi * (solar_hour - 15.0) / 24.0);
    t2m[i] = round2(18.0 + 7.0 * annual + 3.0 * diurnal + tnoise);
    u10[i] = round2(u100[i] * std::pow(0.1, 0.11));
  }
  series::SeriesMetadata meta;
  meta.source = "synthetic";
  return {axis, std::move(u100), std::move(ssrd), std::move(t2m), std::move(u10), meta};
}

manifest::GridManifest write_grid(const std::filesystem::path& dir, const GridSpec& spec) {
  std::filesystem::create_directories(dir / "series");
  const auto manifest_path = dir / "manifest.csv";
  std::ofstream m(manifest_path);
  if (!m) {
    throw Error("cannot write " + manifest_path.string());
  }
  m << "# ssrd_units: W_per_m2\n# t2m_units: C\npoint_id,lat,lon,series_path\n";
  std::size_t k = 0;
  for (std::size_t r = 0; r < spec.rows; ++r) {
    for (std::size_t c = 0; c < spec.cols; ++c, ++k) {
      PointSpec ps;
      ps.start_year = spec.start_year;
      ps.years = spec.years;
      ps.lat = spec.lat0 + spec.step * static_cast<double>(r);
      ps.lon = spec.lon0 + spec.step * static_cast<double>(c);
      ps.seed = mix(spec.seed ^ mix(k));
      std::mt19937_64 knobs(ps.seed);
      ps.mean_wind = 5.0 + 4.0 * std::uniform_real_distribution<double>()(knobs);
      ps.cloudiness = 0.2 + 0.6 * std::uniform_real_distribution<double>()(knobs);
      char id[32];
      std::snprintf(id, sizeof id, "P%04zu", k);
      const auto rel = std::filesystem::path("series") / (std::string(id) + ".csv");
      series::write_series_csv(dir / rel, generate(ps));
      m << id << ',' << text::format_double(ps.lat) << ',' << text::format_double(ps.lon) << ',' << rel.generic_string() << '\n';
    }
  }
  m.close();
  return manifest::load_manifest(manifest_path);
}

}  // namespace synergy::synthetic
