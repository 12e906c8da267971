/**
 * @file output.hpp
 * @brief Result files of a pipeline run.
 *
 * Data files never contain timestamps or timings, so identical runs produce
 * identical bytes; timing goes to run.log.
 */
#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "synergy/config.hpp"
#include "synergy/pipeline.hpp"

namespace synergy::output {

/// Long format: `point_id,lat,lon,metric,scale,value,status`, one row per point x plan entry.
void write_metrics_csv(std::ostream& out, const pipeline::RunResult& run);
void write_events_csv(std::ostream& out, const pipeline::RunResult& run);
void write_energy_csv(std::ostream& out, const pipeline::RunResult& run);
void write_agreement_csv(std::ostream& out, const pipeline::RunResult& run);
void write_failures_csv(std::ostream& out, const pipeline::RunResult& run);

struct MetricRow {
  std::string point_id;
  double lat{};
  double lon{};
  std::string metric;
  std::string scale;
  std::optional<double> value;
  std::string status;  // "ok" or "undefined:<reason>"

  friend bool operator==(const MetricRow&, const MetricRow&) = default;
};

/// Parses the output of write_metrics_csv. Throws InputError on malformed rows.
[[nodiscard]] std::vector<MetricRow> read_metrics_csv(std::istream& in);

/// Regular lat/lon lattice covering a set of points.
struct Lattice {
  double lat_max{};
  double lon_min{};
  double lat_step{};
  double lon_step{};
  std::size_t rows{1};
  std::size_t cols{1};
  std::vector<std::size_t> cell;  // raster index of each point (row-major, north up)
};

/// nullopt when the points do not sit on a regular lattice (or share a cell).
[[nodiscard]] std::optional<Lattice> fit_lattice(const std::vector<manifest::GridPoint>& points);

/**
 * @brief 8-bit grayscale raster of one metric grid.
 *
 * Defined values map linearly from [min, max] to 1..255; 0 is no data
 * (undefined values and empty cells). When min == max every defined cell is
 * 128.
 */
struct Raster {
  std::size_t width{};
  std::size_t height{};
  std::vector<unsigned char> pixels;
  std::optional<double> min;
  std::optional<double> max;
};

[[nodiscard]] Raster rasterize(const pipeline::MetricGrid& grid, const Lattice& lattice);
/// Binary PGM (P5).
void write_pgm(std::ostream& out, const Raster& raster);
void write_legend(std::ostream& out, const pipeline::MetricGrid& grid, const Raster& raster, const Lattice& lattice);

struct WrittenFiles {
  std::vector<std::filesystem::path> files;
  /// Set when rasters were requested but the grid is irregular.
  bool rasters_skipped{false};
};

/**
 * Writes metrics.csv, events.csv, energy.csv, agreement.csv and failures.csv
 * into `dir` (created if needed), plus maps/ for CsvRaster. Throws Error
 * when the directory cannot be written.
 */
WrittenFiles write_outputs(const pipeline::RunResult& run, config::OutputFormat format, const std::filesystem::path& dir);

/// Human-oriented run log with timing; kept apart from the data files.
void write_run_log(const std::filesystem::path& path, const pipeline::RunResult& run, const std::string& command);

}  // namespace synergy::output
