#include "synergy/series_io.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>

#include "synergy/metric.hpp"
#include "synergy/text.hpp"

namespace synergy::series {

std::optional<IrradianceUnit> parse_irradiance_unit(std::string_view text) noexcept {
  if (text == "J_per_m2") {
    return IrradianceUnit::JoulesPerM2;
  }
  if (text == "W_per_m2") {
    return IrradianceUnit::WattsPerM2;
  }
  return std::nullopt;
}

std::optional<TemperatureUnit> parse_temperature_unit(std::string_view text) noexcept {
  if (text == "C") {
    return TemperatureUnit::Celsius;
  }
  if (text == "K") {
    return TemperatureUnit::Kelvin;
  }
  return std::nullopt;
}

std::string_view to_string(IrradianceUnit u) noexcept {
  return u == IrradianceUnit::JoulesPerM2 ? "J_per_m2" : "W_per_m2";
}

std::string_view to_string(TemperatureUnit u) noexcept { return u == TemperatureUnit::Kelvin ? "K" : "C"; }

namespace {

constexpr std::string_view kHeader = "timestamp,u100,ssrd,t2m,u10";
constexpr double kKelvinOffset = 273.15;

}  // namespace

ResourceSeries read_series_csv(std::istream& in, const UnitDeclarations& defaults, const std::string& source) {
  UnitDeclarations units = defaults;
  const auto fail = [&](std::size_t line_no, const std::string& what) -> InputError {
    return InputError(source + ":" + std::to_string(line_no) + ": " + what);
  };

  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::optional<Hour> start;
  Hour previous{};
  std::vector<double> u100, ssrd, t2m, u10;

  while (std::getline(in, line)) {
    ++line_no;
    const auto body = text::trim(line);
    if (body.empty()) {
      continue;
    }
    if (!header_seen) {
      if (body.front() == '#') {
        if (auto kv = text::parse_header_line(body)) {
          if (kv->key == "ssrd_units") {
            units.ssrd = parse_irradiance_unit(kv->value);
            if (!units.ssrd) {
              throw fail(line_no, "unknown ssrd_units '" + kv->value + "' (expected J_per_m2 or W_per_m2)");
            }
          } else if (kv->key == "t2m_units") {
            units.t2m = parse_temperature_unit(kv->value);
            if (!units.t2m) {
              throw fail(line_no, "unknown t2m_units '" + kv->value + "' (expected C or K)");
            }
          }
        }
        continue;
      }
      if (body != kHeader) {
        throw fail(line_no, "expected header '" + std::string(kHeader) + "'");
      }
      header_seen = true;
      continue;
    }

    const auto fields = text::split(body, ',');
    if (fields.size() != 5) {
      throw fail(line_no, "expected 5 fields, found " + std::to_string(fields.size()));
    }
    const auto stamp = parse_iso(text::trim(fields[0]));
    if (!stamp) {
      throw fail(line_no, "invalid timestamp '" + std::string(fields[0]) + "' (whole UTC hours required)");
    }
    if (!start) {
      start = *stamp;
    } else if (*stamp != previous + std::chrono::hours{1}) {
      throw fail(line_no, *stamp <= previous ? "timestamps not strictly increasing"
                                              : "gap in hourly series before " + format_iso(*stamp));
    }
    previous = *stamp;

    std::array<double, 4> v{};
    static constexpr std::array<const char*, 4> kNames{"u100", "ssrd", "t2m", "u10"};
    for (std::size_t c = 0; c < 4; ++c) {
      const auto parsed = text::parse_double(fields[c + 1]);
      if (!parsed) {
        throw fail(line_no, std::string("missing or non-numeric ") + kNames[c]);
      }
      v[c] = *parsed;
    }
    if (v[0] < 0.0 || v[3] < 0.0) {
      throw fail(line_no, "negative wind speed");
    }
    if (v[1] < 0.0) {
      throw fail(line_no, "negative irradiance");
    }
    u100.push_back(v[0]);
    ssrd.push_back(v[1]);
    t2m.push_back(v[2]);
    u10.push_back(v[3]);
  }

  if (!header_seen) {
    throw InputError(source + ": missing header '" + std::string(kHeader) + "'");
  }
  if (!start) {
    throw InputError(source + ": no data rows");
  }
  if (!units.ssrd) {
    throw InputError(source + ": ssrd_units not declared (J_per_m2 or W_per_m2)");
  }
  if (!units.t2m) {
    throw InputError(source + ": t2m_units not declared (C or K)");
  }

  SeriesMetadata meta;
  meta.source = source;
  if (*units.ssrd == IrradianceUnit::JoulesPerM2) {
    ssrd = normalize_irradiance(ssrd);
    meta.irradiance_converted = true;
  }
  if (*units.t2m == TemperatureUnit::Kelvin) {
    for (double& t : t2m) {
      t -= kKelvinOffset;
    }
    meta.temperature_converted = true;
  }
  const TimeAxis axis{*start, u100.size()};
  return ResourceSeries(axis, std::move(u100), std::move(ssrd), std::move(t2m), std::move(u10), std::move(meta));
}

ResourceSeries read_series_csv(const std::filesystem::path& path, const UnitDeclarations& defaults) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open series file " + path.string());
  }
  return read_series_csv(in, defaults, path.string());
}

void write_series_csv(std::ostream& out, const ResourceSeries& series) {
  out << "# ssrd_units: W_per_m2\n# t2m_units: C\n" << kHeader << '\n';
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << format_iso(series.axis().at(i)) << ',' << text::format_double(series.u100()[i]) << ','
        << text::format_double(series.ssrd()[i]) << ',' << text::format_double(series.t2m()[i]) << ','
        << text::format_double(series.u10()[i]) << '\n';
  }
}

void write_series_csv(const std::filesystem::path& path, const ResourceSeries& series) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write series file " + path.string());
  }
  write_series_csv(out, series);
}

}  // namespace synergy::series
