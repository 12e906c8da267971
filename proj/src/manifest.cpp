#include "synergy/manifest.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "synergy/metric.hpp"
#include "synergy/text.hpp"

namespace synergy::manifest {

namespace {
constexpr std::string_view kHeader = "point_id,lat,lon,series_path";
}  // namespace

const GridPoint* GridManifest::find(std::string_view id) const noexcept {
  for (const auto& p : points) {
    if (p.id == id) {
      return &p;
    }
  }
  return nullptr;
}

GridManifest parse_manifest(std::istream& in, const std::filesystem::path& base_dir, const std::string& source,
                            bool check_files) {
  GridManifest m;
  std::set<std::string, std::less<>> ids;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = text::trim(line);
    if (body.empty()) {
      continue;
    }
    const std::string where = source + ":" + std::to_string(line_no);
    if (body.front() == '#') {
      if (header_seen) {
        continue;
      }
      if (auto kv = text::parse_header_line(body)) {
        if (kv->key == "ssrd_units") {
          m.units.ssrd = series::parse_irradiance_unit(kv->value);
          if (!m.units.ssrd) {
            throw InputError(where + ": unknown ssrd_units '" + kv->value + "'");
          }
        } else if (kv->key == "t2m_units") {
          m.units.t2m = series::parse_temperature_unit(kv->value);
          if (!m.units.t2m) {
            throw InputError(where + ": unknown t2m_units '" + kv->value + "'");
          }
        }
      }
      continue;
    }
    if (!header_seen) {
      if (body != kHeader) {
        throw InputError(where + ": expected header '" + std::string(kHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    const auto fields = text::split(body, ',');
    if (fields.size() != 4) {
      throw InputError(where + ": expected 4 fields, found " + std::to_string(fields.size()));
    }
    GridPoint p;
    p.id = std::string(text::trim(fields[0]));
    if (p.id.empty()) {
      throw InputError(where + ": empty point_id");
    }
    const auto lat = text::parse_double(fields[1]);
    const auto lon = text::parse_double(fields[2]);
    if (!lat || *lat < -90.0 || *lat > 90.0) {
      throw InputError(where + ": latitude must be a number in [-90, 90]");
    }
    if (!lon || *lon < -180.0 || *lon > 180.0) {
      throw InputError(where + ": longitude must be a number in [-180, 180]");
    }
    p.lat = *lat;
    p.lon = *lon;
    const auto path_text = text::trim(fields[3]);
    if (path_text.empty()) {
      throw InputError(where + ": empty series_path");
    }
    const std::filesystem::path rel{std::string(path_text)};
    p.series_path = rel.is_absolute() ? rel : base_dir / rel;
    if (!ids.insert(p.id).second) {
      throw InputError(where + ": duplicate point_id '" + p.id + "'");
    }
    m.points.push_back(std::move(p));
  }
  if (!header_seen) {
    throw InputError(source + ": missing header '" + std::string(kHeader) + "'");
  }
  if (m.points.empty()) {
    throw InputError(source + ": no points");
  }
  if (check_files) {
    std::string missing;
    for (const auto& p : m.points) {
      std::error_code ec;
      if (!std::filesystem::is_regular_file(p.series_path, ec)) {
        missing += "\n  " + p.series_path.string();
      }
    }
    if (!missing.empty()) {
      throw InputError(source + ": missing series files:" + missing);
    }
  }
  return m;
}

GridManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open manifest " + path.string());
  }
  return parse_manifest(in, path.parent_path(), path.string());
}

void write_manifest(std::ostream& out, const GridManifest& manifest, const std::filesystem::path& base_dir) {
  if (manifest.units.ssrd) {
    out << "# ssrd_units: " << series::to_string(*manifest.units.ssrd) << '\n';
  }
  if (manifest.units.t2m) {
    out << "# t2m_units: " << series::to_string(*manifest.units.t2m) << '\n';
  }
  out << kHeader << '\n';
  for (const auto& p : manifest.points) {
    out << p.id << ',' << text::format_double(p.lat) << ',' << text::format_double(p.lon) << ','
        << p.series_path.lexically_relative(base_dir).generic_string() << '\n';
  }
}

}  // namespace synergy::manifest
