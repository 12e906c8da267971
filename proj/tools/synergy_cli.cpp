// synergy: grid-scale wind/solar variability, complementarity and energy yield.
#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "synergy/association.hpp"
#include "synergy/config.hpp"
#include "synergy/events.hpp"
#include "synergy/manifest.hpp"
#include "synergy/metric.hpp"
#include "synergy/output.hpp"
#include "synergy/pipeline.hpp"
#include "synergy/power.hpp"
#include "synergy/registry.hpp"
#include "synergy/series_io.hpp"
#include "synergy/text.hpp"
#include "synergy/variability.hpp"

namespace {

using namespace synergy;

struct Options {
  std::string manifest;
  std::string config;
  std::string out;
  std::string point;
  std::optional<unsigned> workers;
  std::string format;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string cell(const Metric& m) { return m.defined() ? text::format_double(m.value()) : "undefined:" + m.reason(); }

std::string cell(const std::optional<double>& v) { return v ? text::format_double(*v) : "-"; }

/// Left-aligned columns sized to their widest entry.
void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()));
    for (std::size_t c = 0; c < r.size(); ++c) {
      width[c] = std::max(width[c], r[c].size());
    }
  }
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c + 1 < r.size()) {
        out << std::left << std::setw(static_cast<int>(width[c])) << r[c] << "  ";
      } else {
        out << r[c];
      }
    }
    out << '\n';
  }
}

config::PipelineConfig resolve_config(const Options& o) {
  auto cfg = o.config.empty() ? config::PipelineConfig{} : config::load_config(o.config);
  if (!o.out.empty()) {
    cfg.output_dir = o.out;
  }
  if (!o.format.empty()) {
    const auto f = config::parse_output_format(o.format);
    if (!f) {
      throw UsageError("--format must be csv or csv+raster");
    }
    cfg.format = *f;
  }
  if (o.workers) {
    cfg.workers = *o.workers;
  } else if (const char* env = std::getenv("SYNERGY_GRID_WORKERS"); env != nullptr && *env != '\0') {
    const auto v = text::parse_double(env);
    if (!v || *v < 1 || *v > 4096 || *v != static_cast<double>(static_cast<unsigned>(*v))) {
      throw UsageError("SYNERGY_GRID_WORKERS must be an integer in [1, 4096]");
    }
    cfg.workers = static_cast<unsigned>(*v);
  }
  cfg.validate();
  return cfg;
}

manifest::GridManifest require_manifest(const Options& o) {
  if (o.manifest.empty()) {
    throw UsageError("--manifest is required");
  }
  return manifest::load_manifest(o.manifest);
}

series::ResourceSeries load_point(const manifest::GridManifest& m, const std::string& id) {
  const auto* p = m.find(id);
  if (p == nullptr) {
    throw InputError("point '" + id + "' is not in the manifest");
  }
  return series::read_series_csv(p->series_path, m.units);
}

int run_grid(const Options& o, const std::string& command, std::vector<std::string> metrics) {
  const auto m = require_manifest(o);
  auto cfg = resolve_config(o);
  if (command != "run-all") {
    cfg.metrics = std::move(metrics);
  }
  if (command == "energy" && !cfg.device.curve) {
    throw InputError("energy needs a turbine power curve in the config");
  }
  const auto result = pipeline::run(m, cfg);
  output::write_outputs(result, cfg.format, cfg.output_dir);
  output::write_run_log(cfg.output_dir / "run.log", result, command);
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    if (!result.results[i].ok()) {
      std::cerr << "point " << result.points[i].id << " failed: " << result.results[i].failure << '\n';
    }
  }
  std::cerr << result.points.size() - result.failed() << " of " << result.points.size() << " points written to "
            << cfg.output_dir.string() << '\n';
  return result.failed() == result.points.size() ? 1 : 0;
}

int cmd_validate(const Options& o) {
  const auto m = require_manifest(o);
  if (!o.config.empty()) {
    (void)resolve_config(o);
  }
  std::size_t bad = 0;
  std::vector<std::vector<std::string>> rows{{"point_id", "hours", "start", "status"}};
  for (const auto& p : m.points) {
    if (!o.point.empty() && p.id != o.point) {
      continue;
    }
    try {
      const auto s = series::read_series_csv(p.series_path, m.units);
      rows.push_back({p.id, std::to_string(s.size()), series::format_iso(s.axis().start()), "ok"});
    } catch (const Error& e) {
      ++bad;
      rows.push_back({p.id, "-", "-", "invalid"});
      std::cerr << e.what() << '\n';
    }
  }
  if (rows.size() == 1) {
    throw InputError("point '" + o.point + "' is not in the manifest");
  }
  print_table(std::cout, rows);
  return bad == 0 ? 0 : 1;
}

int cmd_stats(const Options& o) {
  if (o.point.empty()) {
    return run_grid(o, "stats", {"variability"});
  }
  const auto m = require_manifest(o);
  const auto cfg = resolve_config(o);
  const auto s = load_point(m, o.point);
  const auto wp = power::wind_power_density(s.u100(), cfg.air_density);
  const std::vector<double> sp(s.ssrd().begin(), s.ssrd().end());
  for (const auto& [name, values] : {std::pair{"WP (W/m2)", std::span<const double>(wp)},
                                     std::pair{"SP (W/m2)", std::span<const double>(sp)}}) {
    std::cout << name << '\n';
    std::vector<std::vector<std::string>> rows{
        {"scale", "n", "cv", "rcv", "mav", "iav", "mv", "sv", "p50", "p75", "p90", "p95"}};
    for (const auto& key : registry::expand_scales(cfg.scales)) {
      const auto v = variability::summarize(values, s.axis(), key);
      std::vector<std::string> row{key.label(), std::to_string(v.n), cell(v.cv), cell(v.rcv), cell(v.mav),
                                   cell(v.iav), cell(v.mv), cell(v.sv)};
      for (double q : variability::kDefaultPercentiles) {
        const auto it = v.percentiles.find(q);
        row.push_back(cell(it == v.percentiles.end() ? std::nullopt : std::optional<double>(it->second)));
      }
      rows.push_back(std::move(row));
    }
    print_table(std::cout, rows);
    std::cout << '\n';
  }
  std::vector<std::vector<std::string>> rows{{"scale", "n", "jcv"}};
  for (const auto& key : registry::expand_scales(cfg.scales)) {
    try {
      const auto x = series::values_at(wp, s.axis(), key);
      const auto y = series::values_at(sp, s.axis(), key);
      rows.push_back({key.label(), std::to_string(x.size()),
                      x.size() < 3 ? "undefined:insufficient_pairs" : cell(variability::jcv(x, y))});
    } catch (const InsufficientSpan&) {
      rows.push_back({key.label(), "0", "undefined:insufficient_span"});
    }
  }
  std::cout << "Joint WP/SP\n";
  print_table(std::cout, rows);
  return 0;
}

int cmd_correlate(const Options& o) {
  if (o.point.empty()) {
    return run_grid(o, "correlate", {"association"});
  }
  const auto m = require_manifest(o);
  const auto cfg = resolve_config(o);
  const auto s = load_point(m, o.point);
  const auto wp = power::wind_power_density(s.u100(), cfg.air_density);
  const std::vector<double> sp(s.ssrd().begin(), s.ssrd().end());
  std::vector<association::CorrelationTriple> all;
  std::vector<std::vector<std::string>> rows{{"scale", "n", "pearson", "kendall", "cmed"}};
  for (auto scale : cfg.scales) {
    for (auto& t : association::correlate_at_scale(wp, sp, s.axis(), scale)) {
      rows.push_back({t.scale.label(), std::to_string(t.n), cell(t.pearson), cell(t.kendall), cell(t.cmed)});
      all.push_back(std::move(t));
    }
  }
  print_table(std::cout, rows);
  const auto table = association::agreement_table(all);
  std::cout << "\nSign agreement across " << table.total << " scales (tolerance "
            << text::format_double(table.tolerance) << ")\n";
  std::vector<std::vector<std::string>> agree{{"estimators", "positive", "negative", "same_sign", "excluded",
                                               "within_tolerance"}};
  for (auto e : association::kEstimators) {
    const auto& t = table.single[static_cast<std::size_t>(e)];
    agree.push_back({std::string(association::to_string(e)), std::to_string(t.positive), std::to_string(t.negative),
                     "-", std::to_string(t.zero + t.undefined), "-"});
  }
  for (const auto& p : table.pairs) {
    agree.push_back({std::string(association::to_string(p.first)) + "+" + std::string(association::to_string(p.second)),
                     std::to_string(p.both_positive), std::to_string(p.both_negative), std::to_string(p.same_sign()),
                     std::to_string(p.excluded), std::to_string(p.within_tolerance)});
  }
  print_table(std::cout, agree);
  return 0;
}

int cmd_events(const Options& o) {
  if (o.point.empty()) {
    return run_grid(o, "events", {"events"});
  }
  const auto m = require_manifest(o);
  const auto cfg = resolve_config(o);
  const auto s = load_point(m, o.point);
  const auto wp = power::wind_power_density(s.u100(), cfg.air_density);
  const std::vector<double> sp(s.ssrd().begin(), s.ssrd().end());
  const auto r = events::event_report(wp, sp, cfg.thresholds);
  const auto& c = r.counts;
  const auto count = [&](std::size_t n) { return std::to_string(n); };
  print_table(std::cout, {{"index", "hours", "probability"},
                          {"wcs (wind on, solar off)", count(c.wind_only), text::format_double(c.wcs())},
                          {"scw (solar on, wind off)", count(c.solar_only), text::format_double(c.scw())},
                          {"uws (both off)", count(c.neither), text::format_double(c.uws())},
                          {"both on", count(c.both), text::format_double(c.both_available())},
                          {"sws (exactly one on)", count(c.wind_only + c.solar_only), text::format_double(c.sws())},
                          {"total", count(c.total), "1"}});
  std::cout << "\nmean WP " << text::format_double(r.eligible.wp_an) << " W/m2 (threshold "
            << text::format_double(cfg.thresholds.wp_l) << "), mean SP " << text::format_double(r.eligible.sp_an)
            << " W/m2 (threshold " << text::format_double(cfg.thresholds.sp_l) << ")\n\n";
  std::vector<std::vector<std::string>> rows{{"off-runs", "runs", "off_hours", "mean_h", "max_h"}};
  const auto add = [&](const char* name, const std::optional<events::RunStats>& rs) {
    if (!rs) {
      rows.push_back({name, "not eligible", "-", "-", "-"});
      return;
    }
    rows.push_back({name, count(rs->runs), count(rs->off_hours), cell(rs->mean()), count(rs->max)});
  };
  add("wind", r.durations.wind);
  add("solar", r.durations.solar);
  add("joint", r.durations.joint);
  print_table(std::cout, rows);
  return 0;
}

int cmd_energy(const Options& o) {
  if (o.point.empty()) {
    return run_grid(o, "energy", {});
  }
  const auto m = require_manifest(o);
  const auto cfg = resolve_config(o);
  if (!cfg.device.curve) {
    throw InputError("energy needs a turbine power curve in the config");
  }
  const auto s = load_point(m, o.point);
  const auto table = power::monthly_energy(s, cfg.device);
  std::vector<std::vector<std::string>> rows{
      {"month", "hours", "complete", "wind_gwh", "solar_gwh", "combined_gwh"}};
  for (const auto& r : table.rows) {
    std::ostringstream label;
    label << r.year << '-' << std::setw(2) << std::setfill('0') << r.month;
    rows.push_back({label.str(), std::to_string(r.hours), r.complete ? "yes" : "no", text::format_double(r.wind_gwh),
                    text::format_double(r.solar_gwh), text::format_double(r.combined_gwh)});
  }
  print_table(std::cout, rows);
  return 0;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--manifest", o.manifest, "grid manifest (point_id,lat,lon,series_path)");
  cmd->add_option("--config", o.config, "key = value configuration file");
  cmd->add_option("--out", o.out, "output directory (overrides output_dir)");
  cmd->add_option("--point", o.point, "single-point mode: print tables for this point id");
  cmd->add_option("--workers", o.workers, "worker threads (overrides SYNERGY_GRID_WORKERS and the config)")
      ->check(CLI::Range(1U, 4096U));
  cmd->add_option("--format", o.format, "csv | csv+raster")->check(CLI::IsMember({"csv", "csv+raster"}));
  cmd->footer(config::config_reference());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wind/solar variability, complementarity and energy yield over a grid of points", "synergy"};
  app.footer(config::config_reference());
  app.require_subcommand(1, 1);
  Options o;
  struct Command {
    const char* name;
    const char* help;
    int (*fn)(const Options&);
  };
  const Command commands[] = {
      {"validate", "check the manifest, every series file and the config", cmd_validate},
      {"stats", "variability metrics (tables with --point, metrics.csv otherwise)", cmd_stats},
      {"correlate", "Pearson, Kendall and CMED correlations plus the agreement table", cmd_correlate},
      {"events", "complementarity indices and below-threshold persistence", cmd_events},
      {"energy", "monthly wind, solar and combined energy", cmd_energy},
      {"run-all", "every configured metric, events and energy for the whole grid", nullptr},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, o);
    subs.emplace_back(sub, &c);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    for (const auto& [sub, c] : subs) {
      if (sub->parsed()) {
        if (c->fn == nullptr) {
          return run_grid(o, "run-all", {});
        }
        return c->fn(o);
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
