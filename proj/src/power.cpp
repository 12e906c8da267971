#include "synergy/power.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "synergy/metric.hpp"

namespace synergy::power {

double wind_power_density(double u, AirDensity rho) {
  if (!(u >= 0.0)) {
    throw DomainError("wind speed must be >= 0");
  }
  if (!(rho.rho > 0.0)) {
    throw DomainError("air density must be > 0");
  }
  return 0.5 * rho.rho * u * u * u;
}

std::vector<double> wind_power_density(std::span<const double> u, AirDensity rho) {
  std::vector<double> out;
  out.reserve(u.size());
  for (double x : u) {
    out.push_back(wind_power_density(x, rho));
  }
  return out;
}

double mean_power_density(std::span<const double> hourly) {
  if (hourly.empty()) {
    throw DomainError("mean power density of an empty series");
  }
  double sum = 0.0;
  for (double x : hourly) {
    sum += x;
  }
  return sum / static_cast<double>(hourly.size());
}

double rayleigh_mean_power_density(double mean_speed, AirDensity rho) {
  return 3.0 / std::numbers::pi * rho.rho * mean_speed * mean_speed * mean_speed;
}

double shear_extrapolate(double u100, double target_height, double exponent) {
  if (!(target_height > 0.0)) {
    throw DomainError("target height must be > 0");
  }
  if (!(u100 >= 0.0)) {
    throw DomainError("wind speed must be >= 0");
  }
  if (exponent == 0.0 || target_height == 100.0) {
    return u100;
  }
  return u100 * std::pow(target_height / 100.0, exponent);
}

PowerCurve::PowerCurve(std::vector<CurvePoint> points, double cut_in, double rated_speed, double cut_out,
                       double rated_power, double hub_height)
    : points_(std::move(points)),
      cut_in_(cut_in),
      rated_speed_(rated_speed),
      cut_out_(cut_out),
      rated_power_(rated_power),
      hub_height_(hub_height) {
  if (points_.size() < 2) {
    throw InputError("power curve needs at least two points");
  }
  if (!(0.0 <= cut_in_ && cut_in_ < rated_speed_ && rated_speed_ < cut_out_)) {
    throw InputError("power curve requires 0 <= cut_in < rated_speed < cut_out");
  }
  if (!(rated_power_ > 0.0) || !(hub_height_ > 0.0)) {
    throw InputError("rated power and hub height must be > 0");
  }
  double max_power = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    if (!std::isfinite(p.speed) || !std::isfinite(p.power) || p.power < 0.0) {
      throw InputError("power curve point " + std::to_string(i) + " is invalid");
    }
    if (i > 0) {
      if (!(p.speed > points_[i - 1].speed)) {
        throw InputError("power curve speeds must be strictly increasing");
      }
      if (p.speed <= rated_speed_ && p.power < points_[i - 1].power) {
        throw InputError("power curve must be non-decreasing up to rated speed");
      }
    }
    if (p.speed < cut_out_) {
      max_power = std::max(max_power, p.power);
    }
  }
  if (points_.front().speed > cut_in_ || points_.back().speed < rated_speed_) {
    throw InputError("power curve points must cover [cut_in, rated_speed]");
  }
  if (max_power > rated_power_) {
    throw InputError("power curve exceeds rated power");
  }
  if (std::abs(max_power - rated_power_) > 1e-9 * rated_power_) {
    throw InputError("maximum curve power must equal rated power");
  }
}

double turbine_power(double u_hub, const PowerCurve& curve) {
  if (!(u_hub >= curve.cut_in()) || u_hub >= curve.cut_out()) {
    return 0.0;
  }
  if (u_hub >= curve.rated_speed()) {
    return curve.rated_power();
  }
  const auto pts = curve.points();
  const auto upper = std::lower_bound(pts.begin(), pts.end(), u_hub,
                                      [](const CurvePoint& p, double u) { return p.speed < u; });
  if (upper == pts.end()) {
    return curve.rated_power();
  }
  if (upper->speed == u_hub || upper == pts.begin()) {
    return upper->power;
  }
  const auto lower = upper - 1;
  const double t = (u_hub - lower->speed) / (upper->speed - lower->speed);
  return lower->power + t * (upper->power - lower->power);
}

double mean_turbine_power(std::span<const double> u_hub, const PowerCurve& curve) {
  if (u_hub.empty()) {
    throw DomainError("mean turbine power of an empty series");
  }
  double sum = 0.0;
  for (double u : u_hub) {
    sum += turbine_power(u, curve);
  }
  return sum / static_cast<double>(u_hub.size());
}

double PvFarmConfig::alpha_per_degree() const noexcept {
  const double magnitude = std::abs(alpha_t_literal);
  switch (alpha_mode) {
    case AlphaInterpretation::Fraction:
      return magnitude;
    case AlphaInterpretation::Percent:
      return magnitude / 100.0;
    case AlphaInterpretation::DecimalSlip:
      return magnitude / 10.0;
  }
  return magnitude;
}

void PvFarmConfig::validate() const {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw InputError("pv eta must lie in (0, 1]");
  }
  if (!(p_stc > 0.0)) {
    throw InputError("pv p_stc must be > 0");
  }
  if (n_pv < 1) {
    throw InputError("pv module count must be >= 1");
  }
  if (!std::isfinite(alpha_t_literal) || !std::isfinite(c0) || !std::isfinite(c1) || !std::isfinite(c2) ||
      !std::isfinite(c3)) {
    throw InputError("pv coefficients must be finite");
  }
}

double pv_module_temperature(double t_ambient, double irradiance, double u10, const PvFarmConfig& cfg) {
  if (!(irradiance >= 0.0) || !(u10 >= 0.0)) {
    throw DomainError("irradiance and u10 must be >= 0");
  }
  return cfg.c0 + cfg.c1 * t_ambient + cfg.c2 * irradiance - cfg.c3 * u10;
}

double pv_power(double irradiance, double t_module, const PvFarmConfig& cfg) {
  if (!(irradiance >= 0.0)) {
    throw DomainError("irradiance must be >= 0");
  }
  const double bracket = 1.0 - cfg.alpha_per_degree() * (t_module - PvFarmConfig::kTStc);
  const double p = cfg.eta * (irradiance / PvFarmConfig::kGStc) * cfg.p_stc * bracket;
  return std::max(p, 0.0);
}

double farm_pv_power(double irradiance, double t_module, const PvFarmConfig& cfg) {
  return static_cast<double>(cfg.n_pv) * pv_power(irradiance, t_module, cfg);
}

MonthlyEnergyTable monthly_energy(const series::ResourceSeries& series, const DeviceConfig& device) {
  if (!device.curve) {
    throw DomainError("monthly energy requires a turbine power curve");
  }
  device.pv.validate();
  const PowerCurve& curve = *device.curve;
  const auto u100 = series.u100();
  const auto g = series.ssrd();
  const auto ta = series.t2m();
  const auto u10 = series.u10();

  MonthlyEnergyTable table;
  for (const auto& p : series::partition(series.axis(), series::TimeScale::Monthly)) {
    double wind_kwh = 0.0;
    double solar_wh = 0.0;
    for (std::size_t i = p.begin; i < p.end; ++i) {
      const double u_hub = shear_extrapolate(u100[i], curve.hub_height(), device.shear_exponent);
      wind_kwh += turbine_power(u_hub, curve);
      const double t_mod = pv_module_temperature(ta[i], g[i], u10[i], device.pv);
      solar_wh += farm_pv_power(g[i], t_mod, device.pv);
    }
    MonthlyEnergyRow row;
    row.year = p.year;
    row.month = p.month;
    row.hours = p.hours();
    row.complete = p.complete();
    row.wind_gwh = wind_kwh / 1e6;
    row.solar_gwh = solar_wh / 1e9;
    row.combined_gwh = row.wind_gwh + row.solar_gwh;
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace synergy::power
