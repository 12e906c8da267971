/**
 * @file power.hpp
 * @brief Wind power density, turbine power curve, floating-PV model and monthly energy yield.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "synergy/series.hpp"

namespace synergy::power {

/// Air density in kg/m^3.
struct AirDensity {
  static constexpr double kDefault = 1.2258;
  /// Value used with the Rayleigh mean-power identity.
  static constexpr double kRayleighReference = 1.225;

  double rho{kDefault};
};

/// 0.5 * rho * u^3 in W/m^2. Throws DomainError for u < 0 or rho <= 0.
[[nodiscard]] double wind_power_density(double u, AirDensity rho = {});
[[nodiscard]] std::vector<double> wind_power_density(std::span<const double> u, AirDensity rho = {});

/// Arithmetic mean of hourly power densities. Throws DomainError when empty.
[[nodiscard]] double mean_power_density(std::span<const double> hourly);

/// Mean power density of Rayleigh-distributed speeds with the given mean: (3/pi) rho u^3.
[[nodiscard]] double rayleigh_mean_power_density(double mean_speed, AirDensity rho = {});

/// Power-law profile: u100 * (height / 100)^exponent.
[[nodiscard]] double shear_extrapolate(double u100, double target_height, double exponent);

struct CurvePoint {
  double speed{};  // m/s
  double power{};  // kW
};

/**
 * @brief Tabulated turbine power curve with operating limits.
 *
 * Between cut-in and rated speed the power is interpolated linearly between
 * tabulated points; on [rated, cut-out) it is the rated power; elsewhere zero.
 */
class PowerCurve {
 public:
  /// Validates the curve; throws InputError describing the first violation.
  PowerCurve(std::vector<CurvePoint> points, double cut_in, double rated_speed, double cut_out, double rated_power,
             double hub_height);

  [[nodiscard]] std::span<const CurvePoint> points() const noexcept { return points_; }
  [[nodiscard]] double cut_in() const noexcept { return cut_in_; }
  [[nodiscard]] double rated_speed() const noexcept { return rated_speed_; }
  [[nodiscard]] double cut_out() const noexcept { return cut_out_; }
  [[nodiscard]] double rated_power() const noexcept { return rated_power_; }
  [[nodiscard]] double hub_height() const noexcept { return hub_height_; }

 private:
  std::vector<CurvePoint> points_;
  double cut_in_;
  double rated_speed_;
  double cut_out_;
  double rated_power_;
  double hub_height_;
};

/// Electrical power in kW at hub-height speed `u_hub`.
[[nodiscard]] double turbine_power(double u_hub, const PowerCurve& curve);
/// Mean of turbine_power over the series. Throws DomainError when empty.
[[nodiscard]] double mean_turbine_power(std::span<const double> u_hub, const PowerCurve& curve);

/**
 * How the datasheet temperature coefficient literal is read. The model always
 * uses its magnitude as a loss rate: bracket = 1 - |alpha| (T_mod - T_STC).
 *
 * - Fraction:    literal is per degC (-0.041 -> 4.1 %/degC)
 * - Percent:     literal is %/degC (-0.041 -> 0.041 %/degC)
 * - DecimalSlip: literal lost one decimal place of a %/degC value
 *                (-0.041 -> 0.41 %/degC). Default.
 */
enum class AlphaInterpretation : std::uint8_t { Fraction, Percent, DecimalSlip };

/**
 * @brief Floating PV farm parameters.
 *
 * Module temperature: T_mod = c0 + c1 T_a + c2 G - c3 u10.
 * Module power: eta (G / G_STC) P_STC [1 - |alpha| (T_mod - T_STC)], clamped at 0.
 */
struct PvFarmConfig {
  static constexpr double kGStc = 1000.0;
  static constexpr double kTStc = 25.0;

  double p_stc{220.0};               // W per module
  double alpha_t_literal{-0.041};    // as printed on the module datasheet
  AlphaInterpretation alpha_mode{AlphaInterpretation::DecimalSlip};
  double eta{0.85};
  std::int64_t n_pv{36364};
  double c0{2.0458};
  double c1{0.9458};
  double c2{0.0215};
  double c3{1.2376};

  /// Temperature loss rate per degC (non-negative).
  [[nodiscard]] double alpha_per_degree() const noexcept;
  /// Throws InputError on eta outside (0, 1], p_stc <= 0 or n_pv < 1.
  void validate() const;
};

[[nodiscard]] double pv_module_temperature(double t_ambient, double irradiance, double u10, const PvFarmConfig& cfg);
/// Per-module power in W.
[[nodiscard]] double pv_power(double irradiance, double t_module, const PvFarmConfig& cfg);
/// Farm power in W (n_pv modules).
[[nodiscard]] double farm_pv_power(double irradiance, double t_module, const PvFarmConfig& cfg);

/// Everything needed to turn a resource series into energy.
struct DeviceConfig {
  std::optional<PowerCurve> curve;
  PvFarmConfig pv;
  /// Power-law exponent for extrapolating u100 to hub height; 0 keeps 100 m winds.
  double shear_exponent{0.0};
};

struct MonthlyEnergyRow {
  int year{};
  unsigned month{};
  std::size_t hours{};
  bool complete{};
  double wind_gwh{};
  double solar_gwh{};
  double combined_gwh{};
};

struct MonthlyEnergyTable {
  std::vector<MonthlyEnergyRow> rows;
};

/**
 * Integrates hourly turbine and farm PV power per calendar month (1 h steps).
 * Incomplete months are kept and flagged. Throws DomainError without a curve.
 */
[[nodiscard]] MonthlyEnergyTable monthly_energy(const series::ResourceSeries& series, const DeviceConfig& device);

}  // namespace synergy::power
