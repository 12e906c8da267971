#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "synergy/series_io.hpp"

namespace synergy::manifest {

struct GridPoint {
  std::string id;
  double lat{};
  double lon{};
  /// Resolved against the manifest's directory.
  std::filesystem::path series_path;
};

/**
 * @brief Grid points plus manifest-level unit declarations.
 *
 * File layout: optional `# ssrd_units: ...` / `# t2m_units: ...` header
 * lines, then `point_id,lat,lon,series_path` and one row per point.
 */
struct GridManifest {
  std::vector<GridPoint> points;
  series::UnitDeclarations units;

  [[nodiscard]] const GridPoint* find(std::string_view id) const noexcept;
};

/**
 * Parses and validates a manifest. Relative series paths resolve against
 * `base_dir`. When `check_files` is set every missing series file is listed
 * in one InputError.
 */
[[nodiscard]] GridManifest parse_manifest(std::istream& in, const std::filesystem::path& base_dir,
                                          const std::string& source = "<manifest>", bool check_files = true);
[[nodiscard]] GridManifest load_manifest(const std::filesystem::path& path);

void write_manifest(std::ostream& out, const GridManifest& manifest, const std::filesystem::path& base_dir);

}  // namespace synergy::manifest
