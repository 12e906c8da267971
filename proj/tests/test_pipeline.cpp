#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "support.hpp"
#include "synergy/config.hpp"
#include "synergy/manifest.hpp"
#include "synergy/metric.hpp"
#include "synergy/output.hpp"
#include "synergy/pipeline.hpp"
#include "synergy/registry.hpp"
#include "synergy/synthetic.hpp"

using namespace synergy;
using synergy::testing_support::read_text;
using synergy::testing_support::TempDir;
using synergy::testing_support::write_text;

namespace {

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

manifest::GridManifest parse(const std::string& body, const std::filesystem::path& base = ".", bool check = false) {
  std::istringstream in(body);
  return manifest::parse_manifest(in, base, "m.csv", check);
}

std::map<std::string, std::string> output_files(const std::filesystem::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) {
      out[std::filesystem::relative(e.path(), dir).generic_string()] = read_text(e.path());
    }
  }
  return out;
}

config::PipelineConfig small_config() {
  config::PipelineConfig cfg;
  cfg.device.curve = power::PowerCurve({{3, 0}, {7, 2000}, {12, 8000}}, 3, 12, 25, 8000, 100);
  return cfg;
}

}  // namespace

TEST(Manifest, ParsesPointsAndUnits) {
  const auto m = parse("# ssrd_units: J_per_m2\n# t2m_units: K\npoint_id,lat,lon,series_path\nA,38,15,a.csv\nB,-10.5,-170,/abs/b.csv\n",
                       "/data");
  ASSERT_EQ(m.points.size(), 2u);
  EXPECT_EQ(m.points[0].series_path, std::filesystem::path("/data/a.csv"));
  EXPECT_EQ(m.points[1].series_path, std::filesystem::path("/abs/b.csv"));
  EXPECT_EQ(m.units.ssrd, series::IrradianceUnit::JoulesPerM2);
  EXPECT_EQ(m.units.t2m, series::TemperatureUnit::Kelvin);
  ASSERT_NE(m.find("B"), nullptr);
  EXPECT_EQ(m.find("C"), nullptr);
}

TEST(Manifest, Rejections) {
  const std::string head = "point_id,lat,lon,series_path\n";
  EXPECT_NE(error_of([&] { (void)parse(head); }).find("no points"), std::string::npos);
  EXPECT_NE(error_of([&] { (void)parse(head + "A,1,1,a\nA,2,2,b\n"); }).find("'A'"), std::string::npos);
  EXPECT_NE(error_of([&] { (void)parse(head + "A,1,1,a\nB,91,2,b\n"); }).find("m.csv:3"), std::string::npos);
  EXPECT_NE(error_of([&] { (void)parse(head + "A,1,181,a\n"); }).find("m.csv:2"), std::string::npos);
  EXPECT_NE(error_of([&] { (void)parse(head + "A,1,1\n"); }).find("m.csv:2"), std::string::npos);
  EXPECT_NE(error_of([&] { (void)parse(head + "A,x,1,a\n"); }).find("m.csv:2"), std::string::npos);
  EXPECT_NE(error_of([&] { (void)parse("id,lat\nA,1\n"); }).find("header"), std::string::npos);
  EXPECT_NE(error_of([&] { (void)parse("# ssrd_units: furlongs\n" + head + "A,1,1,a\n"); }).find("ssrd_units"),
            std::string::npos);
}

TEST(Manifest, ListsEveryMissingFile) {
  TempDir dir("manifest");
  write_text(dir / "present.csv", "x");
  const auto msg = error_of([&] {
    (void)parse("point_id,lat,lon,series_path\nA,1,1,present.csv\nB,1,2,gone1.csv\nC,1,3,gone2.csv\n", dir.path(), true);
  });
  EXPECT_NE(msg.find("gone1.csv"), std::string::npos);
  EXPECT_NE(msg.find("gone2.csv"), std::string::npos);
  EXPECT_EQ(msg.find("present.csv"), std::string::npos);
}

TEST(Manifest, WriteThenParse) {
  const auto m = parse("# ssrd_units: W_per_m2\npoint_id,lat,lon,series_path\nA,38.25,15.5,s/a.csv\n", "/base");
  std::ostringstream out;
  manifest::write_manifest(out, m, "/base");
  const auto back = parse(out.str(), "/base");
  ASSERT_EQ(back.points.size(), 1u);
  EXPECT_EQ(back.points[0].lat, 38.25);
  EXPECT_EQ(back.points[0].series_path, m.points[0].series_path);
  EXPECT_EQ(back.units.ssrd, m.units.ssrd);
}

TEST(Config, DefaultsAndOverrides) {
  std::istringstream empty("");
  const auto d = config::parse_config(empty);
  EXPECT_EQ(d.thresholds.wp_l, 280.0);
  EXPECT_EQ(d.thresholds.sp_l, 125.0);
  EXPECT_EQ(d.air_density.rho, 1.2258);
  EXPECT_EQ(d.workers, 1u);
  EXPECT_FALSE(d.device.curve);
  EXPECT_FALSE(d.energy_points);

  std::istringstream in(
      "# demo\nwp_threshold = 300\nsp_threshold=100\nair_density = 1.225\nmetrics = events, pearson\n"
      "scales = hourly, monthly\nworkers = 4\nformat = csv+raster\nenergy_points = A, B\n"
      "turbine_curve = 3:0 7:2000, 12:8000\nturbine_cut_in = 3\nturbine_rated_speed = 12\nturbine_cut_out = 25\n"
      "turbine_rated_power = 8000\nturbine_hub_height = 120\npv_alpha_t_mode = percent\npv_modules = 100\n");
  const auto c = config::parse_config(in);
  EXPECT_EQ(c.thresholds.wp_l, 300.0);
  EXPECT_EQ(c.workers, 4u);
  EXPECT_EQ(c.format, config::OutputFormat::CsvRaster);
  ASSERT_TRUE(c.device.curve);
  EXPECT_EQ(c.device.curve->hub_height(), 120.0);
  EXPECT_EQ(c.device.pv.alpha_mode, power::AlphaInterpretation::Percent);
  EXPECT_EQ(c.device.pv.n_pv, 100);
  ASSERT_TRUE(c.energy_points);
  EXPECT_EQ(c.energy_points->size(), 2u);
  EXPECT_EQ(c.scales.size(), 2u);
}

TEST(Config, ErrorsNameTheLine) {
  const auto err = [](const std::string& body) {
    return error_of([&] {
      std::istringstream in(body);
      (void)config::parse_config(in, "c.txt");
    });
  };
  EXPECT_NE(err("\nbogus = 1\n").find("c.txt:2"), std::string::npos);
  EXPECT_NE(err("workers = 0\n").find("c.txt:1"), std::string::npos);
  EXPECT_NE(err("wp_threshold = lots\n").find("c.txt:1"), std::string::npos);
  EXPECT_NE(err("metrics = nonsense\n").find("nonsense"), std::string::npos);
  EXPECT_NE(err("turbine_cut_in = 3\n").find("turbine_curve"), std::string::npos);
  EXPECT_NE(err("no equals sign\n").find("c.txt:1"), std::string::npos);
}

TEST(Config, ReferenceListsEveryKey) {
  const auto ref = config::config_reference();
  for (const char* key : {"wp_threshold", "sp_threshold", "air_density", "shear_exponent", "turbine_curve",
                          "pv_p_stc", "pv_alpha_t", "pv_alpha_t_mode", "pv_eta", "pv_modules", "metrics", "scales",
                          "output_dir", "workers", "energy_points", "format"}) {
    EXPECT_NE(ref.find(key), std::string::npos) << key;
  }
}

TEST(Registry, SelectionAndScales) {
  const std::vector<std::string> all{"all"};
  EXPECT_EQ(registry::select(all).size(), registry::metrics().size());
  const std::vector<std::string> group{"association"};
  EXPECT_EQ(registry::select(group).size(), 3u);
  const std::vector<std::string> mixed{"kendall", "wcs", "kendall"};
  const auto sel = registry::select(mixed);
  ASSERT_EQ(sel.size(), 2u);
  EXPECT_EQ(sel[0]->name, "kendall");
  const std::vector<std::string> bad{"nope"};
  EXPECT_THROW((void)registry::select(bad), InputError);
  const std::vector<series::TimeScale> scales{series::TimeScale::Hourly, series::TimeScale::Seasonal};
  EXPECT_EQ(registry::expand_scales(scales).size(), 5u);
  std::set<std::string_view> names;
  for (const auto& m : registry::metrics()) {
    EXPECT_TRUE(names.insert(m.name).second) << m.name;
    if (!m.scaled) {
      EXPECT_TRUE(series::parse_scale_key(m.fixed_scale)) << m.name;
    }
  }
}

class PipelineRun : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new TempDir("pipeline");
    synthetic::GridSpec spec;
    spec.rows = 2;
    spec.cols = 3;
    spec.years = 1;
    manifest_ = new manifest::GridManifest(synthetic::write_grid(dir_->path() / "grid", spec));
  }
  static void TearDownTestSuite() {
    delete manifest_;
    delete dir_;
  }
  static TempDir* dir_;
  static manifest::GridManifest* manifest_;
};

TempDir* PipelineRun::dir_ = nullptr;
manifest::GridManifest* PipelineRun::manifest_ = nullptr;

TEST_F(PipelineRun, EveryPlanEntryHasAValueOrReason) {
  const auto cfg = small_config();
  const auto r = pipeline::run(*manifest_, cfg);
  ASSERT_EQ(r.results.size(), 6u);
  EXPECT_EQ(r.failed(), 0u);
  for (std::size_t k = 0; k < r.plan.size(); ++k) {
    const auto g = r.grid(k);
    ASSERT_EQ(g.values.size(), 6u);
    for (const auto& v : g.values) {
      EXPECT_TRUE(v.defined() || !v.reason().empty());
    }
  }
  // Hourly metrics are defined except the median-based ones on SP: nights make its median and MAD zero.
  for (std::size_t k = 0; k < r.plan.size(); ++k) {
    const auto& e = r.plan[k];
    if (e.scale.scale == series::TimeScale::Hourly && e.spec->name == "cmed") {
      for (const auto& v : r.grid(k).values) {
        EXPECT_EQ(v.reason(), "zero_mad");
      }
    }
    if (e.scale.scale == series::TimeScale::Hourly && e.spec->name != "sp_rcv" && e.spec->name != "cmed") {
      for (const auto& v : r.grid(k).values) {
        if (!e.spec->name.starts_with("d_")) {
          EXPECT_TRUE(v.defined()) << e.spec->name << " " << v.reason();
        }
      }
    }
  }
  for (const auto& res : r.results) {
    ASSERT_TRUE(res.energy);
    EXPECT_EQ(res.energy->rows.size(), 12u);
  }
  ASSERT_FALSE(r.agreement.empty());
  EXPECT_EQ(r.agreement[0].table.total, 6u);
}

TEST_F(PipelineRun, WorkerCountDoesNotChangeBytes) {
  auto cfg = small_config();
  cfg.format = config::OutputFormat::CsvRaster;
  std::map<std::string, std::string> first;
  for (unsigned w : {1U, 2U, 8U}) {
    cfg.workers = w;
    const auto out = dir_->path() / ("out" + std::to_string(w));
    output::write_outputs(pipeline::run(*manifest_, cfg), cfg.format, out);
    const auto files = output_files(out);
    if (first.empty()) {
      first = files;
      EXPECT_TRUE(files.count("metrics.csv"));
      EXPECT_TRUE(files.count("maps/wp_mean_hourly.pgm"));
    } else {
      EXPECT_EQ(files, first) << "workers=" << w;
    }
  }
}

TEST_F(PipelineRun, ManifestOrderDoesNotChangeBytes) {
  auto shuffled = *manifest_;
  std::reverse(shuffled.points.begin(), shuffled.points.end());
  const auto cfg = small_config();
  std::ostringstream a, b;
  output::write_metrics_csv(a, pipeline::run(*manifest_, cfg));
  output::write_metrics_csv(b, pipeline::run(shuffled, cfg));
  EXPECT_EQ(a.str(), b.str());
}

TEST_F(PipelineRun, CorruptPointIsIsolated) {
  const auto cfg = small_config();
  std::ostringstream clean;
  output::write_metrics_csv(clean, pipeline::run(*manifest_, cfg));

  auto broken = *manifest_;
  const auto bad = dir_->path() / "bad.csv";
  write_text(bad, "timestamp,u100,ssrd,t2m,u10\n2000-01-01T00:00:00Z,1,0,10\n");
  broken.points[1].series_path = bad;
  const auto r = pipeline::run(broken, cfg);
  EXPECT_EQ(r.failed(), 1u);
  EXPECT_FALSE(r.results[1].ok());
  EXPECT_NE(r.results[1].failure.find("bad.csv:2"), std::string::npos);

  std::ostringstream mixed, failures;
  output::write_metrics_csv(mixed, r);
  output::write_failures_csv(failures, r);
  EXPECT_NE(failures.str().find(r.points[1].id), std::string::npos);
  // Every line of the clean run survives unless it belongs to the broken point.
  std::istringstream a(clean.str()), b(mixed.str());
  std::string la, lb;
  while (std::getline(a, la) && std::getline(b, lb)) {
    if (la.rfind(r.points[1].id + ",", 0) == 0) {
      EXPECT_NE(lb.find("undefined:point_failed"), std::string::npos);
    } else {
      EXPECT_EQ(la, lb);
    }
  }
}

TEST_F(PipelineRun, MetricsCsvRoundTrip) {
  const auto r = pipeline::run(*manifest_, small_config());
  std::ostringstream out;
  output::write_metrics_csv(out, r);
  std::istringstream in(out.str());
  const auto rows = output::read_metrics_csv(in);
  ASSERT_EQ(rows.size(), r.points.size() * r.plan.size());
  std::size_t i = 0;
  for (std::size_t p = 0; p < r.points.size(); ++p) {
    for (std::size_t k = 0; k < r.plan.size(); ++k, ++i) {
      const auto& cell = r.results[p].cells[k];
      EXPECT_EQ(rows[i].point_id, r.points[p].id);
      EXPECT_EQ(rows[i].metric, r.plan[k].spec->name);
      if (cell.defined()) {
        ASSERT_TRUE(rows[i].value);
        EXPECT_EQ(*rows[i].value, cell.value());
        EXPECT_EQ(rows[i].status, "ok");
      } else {
        EXPECT_FALSE(rows[i].value);
        EXPECT_EQ(rows[i].status, "undefined:" + cell.reason());
      }
    }
  }
}

TEST(Output, UndefinedCellHasEmptyValue) {
  pipeline::RunResult r;
  r.points = {{"A", 1, 2, "a.csv"}};
  static const registry::MetricSpec* spec = registry::find("wp_cv");
  r.plan = {{spec, {}}};
  pipeline::PointResult pr;
  pr.cells = {Metric::undefined("zero_mean")};
  r.results = {pr};
  std::ostringstream out;
  output::write_metrics_csv(out, r);
  EXPECT_EQ(out.str(), "point_id,lat,lon,metric,scale,value,status\nA,1,2,wp_cv,hourly,,undefined:zero_mean\n");
}

TEST(Output, ConstantGridRastersUniformly) {
  const std::vector<manifest::GridPoint> pts{{"a", 10, 20, ""}, {"b", 10, 21, ""}, {"c", 11, 20, ""}, {"d", 11, 21, ""}};
  const auto lattice = output::fit_lattice(pts);
  ASSERT_TRUE(lattice);
  EXPECT_EQ(lattice->rows, 2u);
  EXPECT_EQ(lattice->cols, 2u);
  pipeline::MetricGrid g{"wcs", "hourly", {Metric::of(0.3), Metric::of(0.3), Metric::of(0.3), Metric::of(0.3)}};
  const auto raster = output::rasterize(g, *lattice);
  EXPECT_EQ(raster.pixels, std::vector<unsigned char>(4, 128));
  EXPECT_EQ(raster.min, raster.max);
  std::ostringstream legend;
  output::write_legend(legend, g, raster, *lattice);
  EXPECT_NE(legend.str().find("min: 0.3\nmax: 0.3\n"), std::string::npos);
  std::ostringstream pgm;
  output::write_pgm(pgm, raster);
  EXPECT_EQ(pgm.str().substr(0, 11), "P5\n2 2\n255\n");
}

TEST(Output, RasterOrientationAndScaling) {
  const std::vector<manifest::GridPoint> pts{{"sw", 10, 20, ""}, {"ne", 12, 21, ""}, {"nw", 12, 20, ""}};
  const auto lattice = output::fit_lattice(pts);
  ASSERT_TRUE(lattice);
  EXPECT_EQ(lattice->rows, 2u);
  pipeline::MetricGrid g{"m", "hourly", {Metric::of(0.0), Metric::of(10.0), Metric::undefined("x")}};
  const auto raster = output::rasterize(g, *lattice);
  // Row 0 is north: nw (undefined -> 0), ne (max -> 255); row 1: sw (min -> 1), empty cell (0).
  EXPECT_EQ(raster.pixels, (std::vector<unsigned char>{0, 255, 1, 0}));
}

TEST(Output, IrregularGridHasNoRaster) {
  const std::vector<manifest::GridPoint> pts{{"a", 10, 20, ""}, {"b", 10.3, 20, ""}, {"c", 11, 20, ""}};
  EXPECT_FALSE(output::fit_lattice(pts));
}

TEST(Output, UnwritableDirectoryIsAnError) {
  TempDir dir("unwritable");
  write_text(dir / "file", "x");
  pipeline::RunResult r;
  EXPECT_THROW(output::write_outputs(r, config::OutputFormat::Csv, dir / "file" / "sub"), Error);
}
