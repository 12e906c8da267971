#include "synergy/config.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "synergy/metric.hpp"
#include "synergy/registry.hpp"
#include "synergy/text.hpp"

namespace synergy::config {

namespace {

struct CurveKeys {
  std::optional<std::vector<power::CurvePoint>> points;
  std::optional<double> cut_in, rated_speed, cut_out, rated_power, hub_height;

  [[nodiscard]] bool any() const {
    return points || cut_in || rated_speed || cut_out || rated_power || hub_height;
  }
};

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  for (auto part : text::split(value, ',')) {
    const auto t = text::trim(part);
    if (!t.empty()) {
      out.emplace_back(t);
    }
  }
  return out;
}

std::vector<power::CurvePoint> parse_curve(std::string_view value, const std::string& where) {
  std::vector<power::CurvePoint> pts;
  std::string normalized(value);
  for (char& c : normalized) {
    if (c == ',' || c == ';' || c == '\t') {
      c = ' ';
    }
  }
  std::istringstream tokens(normalized);
  std::string token;
  while (tokens >> token) {
    const auto colon = token.find(':');
    if (colon == std::string::npos) {
      throw InputError(where + ": power curve entries must be speed:kW, got '" + token + "'");
    }
    const auto u = text::parse_double(std::string_view(token).substr(0, colon));
    const auto p = text::parse_double(std::string_view(token).substr(colon + 1));
    if (!u || !p) {
      throw InputError(where + ": invalid power curve entry '" + token + "'");
    }
    pts.push_back({*u, *p});
  }
  return pts;
}

}  // namespace

std::optional<OutputFormat> parse_output_format(std::string_view text) noexcept {
  if (text == "csv") {
    return OutputFormat::Csv;
  }
  if (text == "csv+raster") {
    return OutputFormat::CsvRaster;
  }
  return std::nullopt;
}

void PipelineConfig::validate() const {
  thresholds.validate();
  if (!(air_density.rho > 0.0)) {
    throw InputError("air_density must be > 0");
  }
  device.pv.validate();
  if (!std::isfinite(device.shear_exponent)) {
    throw InputError("shear_exponent must be finite");
  }
  if (workers < 1) {
    throw InputError("workers must be >= 1");
  }
  if (scales.empty()) {
    throw InputError("at least one scale is required");
  }
  (void)registry::select(metrics);
}

PipelineConfig parse_config(std::istream& in, const std::string& source) {
  PipelineConfig cfg;
  CurveKeys curve;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = text::trim(line);
    if (body.empty() || body.front() == '#') {
      continue;
    }
    const std::string where = source + ":" + std::to_string(line_no);
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw InputError(where + ": expected 'key = value'");
    }
    const std::string key(text::trim(body.substr(0, eq)));
    const std::string value(text::trim(body.substr(eq + 1)));
    const auto number = [&]() -> double {
      const auto v = text::parse_double(value);
      if (!v) {
        throw InputError(where + ": '" + key + "' expects a number, got '" + value + "'");
      }
      return *v;
    };

    if (key == "wp_threshold") {
      cfg.thresholds.wp_l = number();
    } else if (key == "sp_threshold") {
      cfg.thresholds.sp_l = number();
    } else if (key == "air_density") {
      cfg.air_density.rho = number();
    } else if (key == "shear_exponent") {
      cfg.device.shear_exponent = number();
    } else if (key == "turbine_curve") {
      curve.points = parse_curve(value, where);
    } else if (key == "turbine_cut_in") {
      curve.cut_in = number();
    } else if (key == "turbine_rated_speed") {
      curve.rated_speed = number();
    } else if (key == "turbine_cut_out") {
      curve.cut_out = number();
    } else if (key == "turbine_rated_power") {
      curve.rated_power = number();
    } else if (key == "turbine_hub_height") {
      curve.hub_height = number();
    } else if (key == "pv_p_stc") {
      cfg.device.pv.p_stc = number();
    } else if (key == "pv_alpha_t") {
      cfg.device.pv.alpha_t_literal = number();
    } else if (key == "pv_alpha_t_mode") {
      if (value == "fraction") {
        cfg.device.pv.alpha_mode = power::AlphaInterpretation::Fraction;
      } else if (value == "percent") {
        cfg.device.pv.alpha_mode = power::AlphaInterpretation::Percent;
      } else if (value == "decimal_slip") {
        cfg.device.pv.alpha_mode = power::AlphaInterpretation::DecimalSlip;
      } else {
        throw InputError(where + ": pv_alpha_t_mode must be fraction, percent or decimal_slip");
      }
    } else if (key == "pv_eta") {
      cfg.device.pv.eta = number();
    } else if (key == "pv_modules") {
      const double n = number();
      if (n != std::floor(n) || n < 1 || n > 1e12) {
        throw InputError(where + ": pv_modules must be a positive integer");
      }
      cfg.device.pv.n_pv = static_cast<std::int64_t>(n);
    } else if (key == "pv_c0") {
      cfg.device.pv.c0 = number();
    } else if (key == "pv_c1") {
      cfg.device.pv.c1 = number();
    } else if (key == "pv_c2") {
      cfg.device.pv.c2 = number();
    } else if (key == "pv_c3") {
      cfg.device.pv.c3 = number();
    } else if (key == "metrics") {
      cfg.metrics = split_list(value);
      if (cfg.metrics.empty()) {
        throw InputError(where + ": metrics list is empty");
      }
    } else if (key == "scales") {
      cfg.scales.clear();
      for (const auto& s : split_list(value)) {
        const auto scale = series::parse_time_scale(s);
        if (!scale) {
          throw InputError(where + ": unknown scale '" + s + "'");
        }
        cfg.scales.push_back(*scale);
      }
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else if (key == "workers") {
      const double n = number();
      if (n != std::floor(n) || n < 1 || n > 4096) {
        throw InputError(where + ": workers must be an integer in [1, 4096]");
      }
      cfg.workers = static_cast<unsigned>(n);
    } else if (key == "energy_points") {
      if (value == "all") {
        cfg.energy_points.reset();
      } else if (value == "none") {
        cfg.energy_points = std::vector<std::string>{};
      } else {
        cfg.energy_points = split_list(value);
      }
    } else if (key == "format") {
      const auto f = parse_output_format(value);
      if (!f) {
        throw InputError(where + ": format must be csv or csv+raster");
      }
      cfg.format = *f;
    } else {
      throw InputError(where + ": unknown key '" + key + "'");
    }
  }

  if (curve.any()) {
    if (!curve.points || !curve.cut_in || !curve.rated_speed || !curve.cut_out || !curve.rated_power ||
        !curve.hub_height) {
      throw InputError(source +
                       ": a turbine needs turbine_curve, turbine_cut_in, turbine_rated_speed, turbine_cut_out, "
                       "turbine_rated_power and turbine_hub_height");
    }
    cfg.device.curve.emplace(*curve.points, *curve.cut_in, *curve.rated_speed, *curve.cut_out, *curve.rated_power,
                             *curve.hub_height);
  }
  try {
    cfg.validate();
  } catch (const InputError& e) {
    throw InputError(source + ": " + e.what());
  }
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open config file " + path.string());
  }
  return parse_config(in, path.string());
}

std::string config_reference() {
  return R"(Configuration keys (flat "key = value" file, '#' starts a comment):
  wp_threshold = 280        W/m2; upper limit of the poor wind power class
  sp_threshold = 125        W/m2; upper limit of the poor solar resource class (NREL)
  air_density = 1.2258      kg/m3; constant offshore air density, no humidity correction
                            (1.225 reproduces the Rayleigh 6.2 m/s -> 280 W/m2 identity)
  shear_exponent = 0        power-law exponent from 100 m to hub height; 0 keeps 100 m winds
                            (0.11 is a typical offshore value)
  turbine_curve = u:kW ...  tabulated power curve; no default, required for energy output
  turbine_cut_in, turbine_rated_speed, turbine_cut_out (m/s), turbine_rated_power (kW),
  turbine_hub_height (m)    operating limits; required together with turbine_curve
  pv_p_stc = 220            W; rated module power (SPR-220 class module)
  pv_alpha_t = -0.041       module temperature coefficient as printed on the datasheet
  pv_alpha_t_mode = decimal_slip
                            fraction: |alpha| per degC; percent: |alpha| %/degC;
                            decimal_slip: |alpha|*10 %/degC (default, 0.41 %/degC)
  pv_eta = 0.85             overall system performance factor
  pv_modules = 36364        modules in the farm (8 MW / 220 W)
  pv_c0..pv_c3 = 2.0458, 0.9458, 0.0215, 1.2376
                            floating-module temperature model T = c0 + c1 Ta + c2 G - c3 u10
  metrics = all             metric names, or groups: variability, association, events
  scales = hourly,seasonal,annual
                            also daily, monthly; seasonal expands to DJF/MAM/JJA/SON
  output_dir = out
  workers = 1               overridden by SYNERGY_GRID_WORKERS, then by --workers
  energy_points = all       all | none | comma-separated point ids
  format = csv              csv | csv+raster
)";
}

}  // namespace synergy::config
