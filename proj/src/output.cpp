#include "synergy/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <limits>
#include <set>

#include "synergy/metric.hpp"
#include "synergy/text.hpp"

namespace synergy::output {

namespace {

using text::format_double;

constexpr std::string_view kMetricsHeader = "point_id,lat,lon,metric,scale,value,status";

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(s);
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') {
      out += '"';
    }
    out += (c == '\n' || c == '\r') ? ' ' : c;
  }
  out += '"';
  return out;
}

std::string metric_value(const Metric& m) { return m.defined() ? format_double(m.value()) : std::string(); }

std::string metric_status(const Metric& m) { return m.defined() ? "ok" : "undefined:" + m.reason(); }

void point_prefix(std::ostream& out, const manifest::GridPoint& p) {
  out << p.id << ',' << format_double(p.lat) << ',' << format_double(p.lon);
}

void write_runs(std::ostream& out, const std::optional<events::RunStats>& r) {
  if (!r) {
    out << ",,,";
    return;
  }
  const auto m = r->mean();
  out << ',' << r->runs << ',' << (m ? format_double(*m) : std::string()) << ',' << r->max;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error("cannot write " + path.string());
  }
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) {
    throw Error("failed writing " + path.string());
  }
}

std::string file_stem(std::string_view metric, std::string_view scale) {
  return std::string(metric) + "_" + std::string(scale);
}

}  // namespace

void write_metrics_csv(std::ostream& out, const pipeline::RunResult& run) {
  out << kMetricsHeader << '\n';
  for (std::size_t i = 0; i < run.points.size(); ++i) {
    const auto& r = run.results[i];
    for (std::size_t k = 0; k < run.plan.size(); ++k) {
      const Metric cell = r.ok() ? r.cells[k] : Metric::undefined("point_failed");
      point_prefix(out, run.points[i]);
      out << ',' << run.plan[k].spec->name << ',' << run.plan[k].scale_label() << ',' << metric_value(cell) << ','
          << metric_status(cell) << '\n';
    }
  }
}

void write_events_csv(std::ostream& out, const pipeline::RunResult& run) {
  out << "point_id,lat,lon,hours,wind_only,solar_only,neither,both,wcs,scw,uws,sws,both_available,wp_an,sp_an,"
         "wind_eligible,solar_eligible,d_nw_runs,d_nw_mean,d_nw_max,d_ns_runs,d_ns_mean,d_ns_max,"
         "d_joint_runs,d_joint_mean,d_joint_max,status\n";
  for (std::size_t i = 0; i < run.points.size(); ++i) {
    const auto& r = run.results[i];
    point_prefix(out, run.points[i]);
    if (!r.ok() || !r.events) {
      out << ',' << (r.ok() ? std::to_string(r.hours) : std::string()) << std::string(23, ',')
          << "undefined:" << (r.ok() ? r.events_status : std::string("point_failed")) << '\n';
      continue;
    }
    const auto& e = *r.events;
    const auto& c = e.counts;
    out << ',' << c.total << ',' << c.wind_only << ',' << c.solar_only << ',' << c.neither << ',' << c.both << ','
        << format_double(c.wcs()) << ',' << format_double(c.scw()) << ',' << format_double(c.uws()) << ','
        << format_double(c.sws()) << ',' << format_double(c.both_available()) << ',' << format_double(e.eligible.wp_an)
        << ',' << format_double(e.eligible.sp_an) << ',' << (e.eligible.wind ? 1 : 0) << ','
        << (e.eligible.solar ? 1 : 0);
    write_runs(out, e.durations.wind);
    write_runs(out, e.durations.solar);
    write_runs(out, e.durations.joint);
    out << ",ok\n";
  }
}

void write_energy_csv(std::ostream& out, const pipeline::RunResult& run) {
  out << "point_id,year,month,hours,complete,wind_gwh,solar_gwh,combined_gwh\n";
  for (std::size_t i = 0; i < run.points.size(); ++i) {
    const auto& r = run.results[i];
    if (!r.ok() || !r.energy) {
      continue;
    }
    for (const auto& row : r.energy->rows) {
      out << run.points[i].id << ',' << row.year << ',' << row.month << ',' << row.hours << ','
          << (row.complete ? 1 : 0) << ',' << format_double(row.wind_gwh) << ',' << format_double(row.solar_gwh)
          << ',' << format_double(row.combined_gwh) << '\n';
    }
  }
}

void write_agreement_csv(std::ostream& out, const pipeline::RunResult& run) {
  out << "scale,estimators,total,positive,negative,same_sign,zero,undefined,within_tolerance,tolerance\n";
  for (const auto& a : run.agreement) {
    const auto& t = a.table;
    for (auto e : association::kEstimators) {
      const auto& s = t.single[static_cast<std::size_t>(e)];
      out << a.scale << ',' << association::to_string(e) << ',' << t.total << ',' << s.positive << ',' << s.negative
          << ",," << s.zero << ',' << s.undefined << ",," << format_double(t.tolerance) << '\n';
    }
    for (const auto& p : t.pairs) {
      out << a.scale << ',' << association::to_string(p.first) << '+' << association::to_string(p.second) << ','
          << t.total << ',' << p.both_positive << ',' << p.both_negative << ',' << p.same_sign() << ",," << p.excluded
          << ',' << p.within_tolerance << ',' << format_double(t.tolerance) << '\n';
    }
  }
}

void write_failures_csv(std::ostream& out, const pipeline::RunResult& run) {
  out << "point_id,reason\n";
  for (std::size_t i = 0; i < run.points.size(); ++i) {
    if (!run.results[i].ok()) {
      out << run.points[i].id << ',' << csv_field(run.results[i].failure) << '\n';
    }
  }
}

std::vector<MetricRow> read_metrics_csv(std::istream& in) {
  std::vector<MetricRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = "metrics.csv:" + std::to_string(line_no);
    if (line_no == 1) {
      if (text::trim(line) != kMetricsHeader) {
        throw InputError(where + ": unexpected header");
      }
      continue;
    }
    if (text::trim(line).empty()) {
      continue;
    }
    const auto f = text::split(line, ',');
    if (f.size() != 7) {
      throw InputError(where + ": expected 7 fields");
    }
    MetricRow r;
    r.point_id = std::string(f[0]);
    const auto lat = text::parse_double(f[1]);
    const auto lon = text::parse_double(f[2]);
    if (!lat || !lon) {
      throw InputError(where + ": invalid coordinates");
    }
    r.lat = *lat;
    r.lon = *lon;
    r.metric = std::string(f[3]);
    r.scale = std::string(f[4]);
    if (!f[5].empty()) {
      r.value = text::parse_double(f[5]);
      if (!r.value) {
        throw InputError(where + ": invalid value");
      }
    }
    r.status = std::string(text::trim(f[6]));
    if ((r.status == "ok") != r.value.has_value()) {
      throw InputError(where + ": status does not match value");
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::optional<Lattice> fit_lattice(const std::vector<manifest::GridPoint>& points) {
  if (points.empty()) {
    return std::nullopt;
  }
  const auto axis = [](std::set<double> values) -> std::optional<std::pair<double, std::size_t>> {
    if (values.size() == 1) {
      return std::pair{0.0, std::size_t{1}};
    }
    double step = std::numeric_limits<double>::infinity();
    for (auto it = std::next(values.begin()); it != values.end(); ++it) {
      step = std::min(step, *it - *std::prev(it));
    }
    const double lo = *values.begin();
    const double span = *values.rbegin() - lo;
    const double n = std::round(span / step);
    if (n > 100000) {
      return std::nullopt;
    }
    for (double v : values) {
      const double k = (v - lo) / step;
      if (std::abs(k - std::round(k)) > 1e-6) {
        return std::nullopt;
      }
    }
    return std::pair{step, static_cast<std::size_t>(n) + 1};
  };
  std::set<double> lats, lons;
  for (const auto& p : points) {
    lats.insert(p.lat);
    lons.insert(p.lon);
  }
  const auto la = axis(lats);
  const auto lo = axis(lons);
  if (!la || !lo) {
    return std::nullopt;
  }
  Lattice l;
  l.lat_max = *lats.rbegin();
  l.lon_min = *lons.begin();
  l.lat_step = la->first;
  l.lon_step = lo->first;
  l.rows = la->second;
  l.cols = lo->second;
  std::set<std::size_t> used;
  for (const auto& p : points) {
    const auto row = l.rows == 1 ? 0 : static_cast<std::size_t>(std::llround((l.lat_max - p.lat) / l.lat_step));
    const auto col = l.cols == 1 ? 0 : static_cast<std::size_t>(std::llround((p.lon - l.lon_min) / l.lon_step));
    const auto idx = row * l.cols + col;
    if (!used.insert(idx).second) {
      return std::nullopt;
    }
    l.cell.push_back(idx);
  }
  return l;
}

Raster rasterize(const pipeline::MetricGrid& grid, const Lattice& lattice) {
  if (grid.values.size() != lattice.cell.size()) {
    throw DomainError("grid and lattice sizes differ");
  }
  Raster r;
  r.width = lattice.cols;
  r.height = lattice.rows;
  r.pixels.assign(r.width * r.height, 0);
  for (const auto& m : grid.values) {
    if (m.defined()) {
      r.min = r.min ? std::min(*r.min, m.value()) : m.value();
      r.max = r.max ? std::max(*r.max, m.value()) : m.value();
    }
  }
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    const auto& m = grid.values[i];
    if (!m.defined()) {
      continue;
    }
    unsigned char px = 128;
    if (*r.max > *r.min) {
      const double t = (m.value() - *r.min) / (*r.max - *r.min);
      px = static_cast<unsigned char>(1 + std::lround(t * 254.0));
    }
    r.pixels[lattice.cell[i]] = px;
  }
  return r;
}

void write_pgm(std::ostream& out, const Raster& raster) {
  out << "P5\n" << raster.width << ' ' << raster.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(raster.pixels.data()), static_cast<std::streamsize>(raster.pixels.size()));
}

void write_legend(std::ostream& out, const pipeline::MetricGrid& grid, const Raster& raster, const Lattice& lattice) {
  const auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("none"); };
  out << "metric: " << grid.metric << '\n'
      << "scale: " << grid.scale << '\n'
      << "min: " << opt(raster.min) << '\n'
      << "max: " << opt(raster.max) << '\n'
      << "scaling: pixel = 1 + round(254 * (value - min) / (max - min)); 128 when min = max\n"
      << "nodata: 0\n"
      << "width: " << raster.width << '\n'
      << "height: " << raster.height << '\n'
      << "north_lat: " << format_double(lattice.lat_max) << '\n'
      << "west_lon: " << format_double(lattice.lon_min) << '\n'
      << "lat_step: " << format_double(lattice.lat_step) << '\n'
      << "lon_step: " << format_double(lattice.lon_step) << '\n';
}

WrittenFiles write_outputs(const pipeline::RunResult& run, config::OutputFormat format,
                           const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  }
  WrittenFiles written;
  const auto emit = [&](const std::string& name, void (*writer)(std::ostream&, const pipeline::RunResult&)) {
    const auto path = dir / name;
    auto out = open_for_write(path);
    writer(out, run);
    finish(out, path);
    written.files.push_back(path);
  };
  emit("metrics.csv", write_metrics_csv);
  emit("events.csv", write_events_csv);
  emit("energy.csv", write_energy_csv);
  emit("agreement.csv", write_agreement_csv);
  emit("failures.csv", write_failures_csv);

  if (format == config::OutputFormat::CsvRaster) {
    const auto lattice = fit_lattice(run.points);
    if (!lattice) {
      written.rasters_skipped = true;
      return written;
    }
    const auto maps = dir / "maps";
    std::filesystem::create_directories(maps, ec);
    if (ec) {
      throw Error("cannot create " + maps.string() + ": " + ec.message());
    }
    for (std::size_t k = 0; k < run.plan.size(); ++k) {
      const auto grid = run.grid(k);
      const auto raster = rasterize(grid, *lattice);
      const auto stem = file_stem(grid.metric, grid.scale);
      const auto img = maps / (stem + ".pgm");
      auto out = open_for_write(img);
      write_pgm(out, raster);
      finish(out, img);
      const auto legend = maps / (stem + ".legend.txt");
      auto lout = open_for_write(legend);
      write_legend(lout, grid, raster, *lattice);
      finish(lout, legend);
      written.files.push_back(img);
      written.files.push_back(legend);
    }
  }
  return written;
}

void write_run_log(const std::filesystem::path& path, const pipeline::RunResult& run, const std::string& command) {
  auto out = open_for_write(path);
  out << "command: " << command << '\n'
      << "points: " << run.points.size() << '\n'
      << "failed: " << run.failed() << '\n'
      << "workers: " << run.workers << '\n'
      << "plan_entries: " << run.plan.size() << '\n'
      << "elapsed_seconds: " << run.elapsed_seconds << '\n';
  finish(out, path);
}

}  // namespace synergy::output
