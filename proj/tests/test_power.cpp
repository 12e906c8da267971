#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"
#include "synergy/metric.hpp"
#include "synergy/power.hpp"

using namespace synergy;
using namespace synergy::power;

namespace {

// Illustrative 8 MW class curve: cubic-ish ramp from 3 to 12 m/s.
PowerCurve test_curve(double hub = 100.0) {
  return {{{3, 0}, {5, 600}, {7, 2000}, {9, 4500}, {11, 7200}, {12, 8000}}, 3.0, 12.0, 25.0, 8000.0, hub};
}

series::ResourceSeries constant_series(const series::TimeAxis& axis, double u, double g, double ta, double u10) {
  const auto n = axis.size();
  return {axis, std::vector<double>(n, u), std::vector<double>(n, g), std::vector<double>(n, ta),
          std::vector<double>(n, u10)};
}

}  // namespace

TEST(WindPowerDensity, HalfRhoUCubed) {
  EXPECT_DOUBLE_EQ(wind_power_density(10.0, {1.2}), 0.5 * 1.2 * 1000.0);
  EXPECT_EQ(wind_power_density(0.0), 0.0);
  EXPECT_DOUBLE_EQ(wind_power_density(2.0), 0.5 * 1.2258 * 8.0);
  EXPECT_THROW((void)wind_power_density(-1.0), DomainError);
  EXPECT_THROW((void)wind_power_density(1.0, {0.0}), DomainError);
}

TEST(WindPowerDensity, RayleighIdentity) {
  EXPECT_NEAR(rayleigh_mean_power_density(6.2, {AirDensity::kRayleighReference}),
              3.0 / std::numbers::pi * 1.225 * 6.2 * 6.2 * 6.2, 1e-12);
  // The poor/fair wind class boundary: 6.2 m/s mean corresponds to about 280 W/m2 (278.8).
  EXPECT_NEAR(rayleigh_mean_power_density(6.2, {AirDensity::kRayleighReference}), 280.0, 1.5);
}

TEST(WindPowerDensity, MeanOfEmptyThrows) {
  EXPECT_THROW((void)mean_power_density({}), DomainError);
  const std::vector<double> v{1, 2, 3};
  EXPECT_DOUBLE_EQ(mean_power_density(v), 2.0);
}

TEST(Shear, PowerLaw) {
  EXPECT_EQ(shear_extrapolate(8.0, 150.0, 0.0), 8.0);
  EXPECT_EQ(shear_extrapolate(8.0, 100.0, 0.11), 8.0);
  EXPECT_DOUBLE_EQ(shear_extrapolate(8.0, 150.0, 0.11), 8.0 * std::pow(1.5, 0.11));
  EXPECT_THROW((void)shear_extrapolate(8.0, 0.0, 0.11), DomainError);
}

TEST(PowerCurve, RegionsAndInterpolation) {
  const auto c = test_curve();
  EXPECT_EQ(turbine_power(0.0, c), 0.0);
  EXPECT_EQ(turbine_power(2.99, c), 0.0);
  EXPECT_EQ(turbine_power(3.0, c), 0.0);
  EXPECT_DOUBLE_EQ(turbine_power(4.0, c), 300.0);
  EXPECT_DOUBLE_EQ(turbine_power(8.0, c), 3250.0);
  EXPECT_EQ(turbine_power(12.0, c), 8000.0);
  EXPECT_EQ(turbine_power(24.99, c), 8000.0);
  EXPECT_EQ(turbine_power(25.0, c), 0.0);
  EXPECT_EQ(turbine_power(40.0, c), 0.0);
}

TEST(PowerCurve, MonotoneUpToRated) {
  const auto c = test_curve();
  double prev = 0.0;
  for (double u = 0.0; u < 25.0; u += 0.01) {
    const double p = turbine_power(u, c);
    EXPECT_GE(p, prev - 1e-12);
    EXPECT_LE(p, 8000.0);
    prev = p;
  }
}

TEST(PowerCurve, Validation) {
  EXPECT_THROW(PowerCurve({{3, 0}}, 3, 12, 25, 8000, 100), InputError);
  EXPECT_THROW(PowerCurve({{3, 0}, {12, 8000}}, 12, 3, 25, 8000, 100), InputError);
  EXPECT_THROW(PowerCurve({{3, 0}, {2, 10}, {12, 8000}}, 3, 12, 25, 8000, 100), InputError);
  EXPECT_THROW(PowerCurve({{3, 0}, {7, 5000}, {9, 4000}, {12, 8000}}, 3, 12, 25, 8000, 100), InputError);
  EXPECT_THROW(PowerCurve({{3, 0}, {12, 7000}}, 3, 12, 25, 8000, 100), InputError);
  EXPECT_THROW(PowerCurve({{5, 0}, {12, 8000}}, 3, 12, 25, 8000, 100), InputError);
  EXPECT_THROW(PowerCurve({{3, 0}, {12, 8000}}, 3, 12, 25, 8000, 0), InputError);
  EXPECT_NO_THROW(PowerCurve({{3, 0}, {12, 8000}}, 3, 12, 25, 8000, 100));
}

TEST(PvModel, ModuleTemperatureHandValues) {
  const PvFarmConfig cfg;
  EXPECT_NEAR(pv_module_temperature(20.0, 1000.0, 5.0, cfg), 36.2738, 1e-9);
  EXPECT_NEAR(pv_module_temperature(0.0, 0.0, 0.0, cfg), 2.0458, 1e-12);
  EXPECT_NEAR(pv_module_temperature(30.0, 800.0, 2.0, cfg), 2.0458 + 0.9458 * 30 + 0.0215 * 800 - 1.2376 * 2, 1e-9);
}

TEST(PvModel, StcPowerIsEtaTimesRating) {
  const PvFarmConfig cfg;
  EXPECT_NEAR(pv_power(1000.0, 25.0, cfg), 187.0, 1e-9);
  EXPECT_NEAR(farm_pv_power(1000.0, 25.0, cfg), 36364.0 * 187.0, 1e-6);
  EXPECT_EQ(pv_power(0.0, 40.0, cfg), 0.0);
}

TEST(PvModel, AlphaInterpretations) {
  PvFarmConfig cfg;
  EXPECT_NEAR(cfg.alpha_per_degree(), 0.0041, 1e-15);
  cfg.alpha_mode = AlphaInterpretation::Percent;
  EXPECT_NEAR(cfg.alpha_per_degree(), 0.00041, 1e-15);
  cfg.alpha_mode = AlphaInterpretation::Fraction;
  EXPECT_NEAR(cfg.alpha_per_degree(), 0.041, 1e-15);
  // Hot modules lose output at the configured rate.
  cfg.alpha_mode = AlphaInterpretation::DecimalSlip;
  EXPECT_NEAR(pv_power(1000.0, 35.0, cfg), 187.0 * (1.0 - 0.0041 * 10.0), 1e-9);
  // Fraction reading drives the bracket negative well inside the operating range; clamped.
  cfg.alpha_mode = AlphaInterpretation::Fraction;
  EXPECT_EQ(pv_power(1000.0, 60.0, cfg), 0.0);
}

TEST(PvModel, Validation) {
  PvFarmConfig cfg;
  cfg.eta = 1.5;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = {};
  cfg.n_pv = 0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = {};
  cfg.p_stc = -1;
  EXPECT_THROW(cfg.validate(), InputError);
}

TEST(MonthlyEnergy, RatedWindForThirtyDays) {
  const series::TimeAxis axis(series::from_civil(2001, 6, 1), 720);
  DeviceConfig dev;
  dev.curve = test_curve();
  const auto t = monthly_energy(constant_series(axis, 12.0, 0.0, 20.0, 5.0), dev);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].hours, 720u);
  EXPECT_TRUE(t.rows[0].complete);
  EXPECT_EQ(t.rows[0].wind_gwh, 5.76);
  EXPECT_EQ(t.rows[0].solar_gwh, 0.0);
  EXPECT_EQ(t.rows[0].combined_gwh, t.rows[0].wind_gwh + t.rows[0].solar_gwh);
}

TEST(MonthlyEnergy, PartialMonthsAreFlagged) {
  const series::TimeAxis axis(series::from_civil(2001, 1, 20), 24 * 20);
  DeviceConfig dev;
  dev.curve = test_curve();
  const auto t = monthly_energy(constant_series(axis, 8.0, 500.0, 20.0, 5.0), dev);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_FALSE(t.rows[0].complete);
  EXPECT_EQ(t.rows[0].hours, 24u * 12u);
  EXPECT_FALSE(t.rows[1].complete);
  EXPECT_EQ(t.rows[1].month, 2u);
}

TEST(MonthlyEnergy, SolarMatchesHourlySum) {
  const series::TimeAxis axis(series::from_civil(2003, 4, 1), 24 * 30);
  std::mt19937_64 rng(11);
  const auto g = testing_support::uniform(rng, axis.size(), 0.0, 1000.0);
  const auto ta = testing_support::uniform(rng, axis.size(), 5.0, 30.0);
  const auto u10 = testing_support::uniform(rng, axis.size(), 0.0, 12.0);
  const auto u = testing_support::uniform(rng, axis.size(), 0.0, 30.0);
  const series::ResourceSeries s(axis, u, g, ta, u10);
  DeviceConfig dev;
  dev.curve = test_curve(150.0);
  dev.shear_exponent = 0.11;
  const auto t = monthly_energy(s, dev);
  ASSERT_EQ(t.rows.size(), 1u);
  double wh = 0.0, kwh = 0.0;
  for (std::size_t i = 0; i < axis.size(); ++i) {
    wh += farm_pv_power(g[i], pv_module_temperature(ta[i], g[i], u10[i], dev.pv), dev.pv);
    kwh += turbine_power(u[i] * std::pow(1.5, 0.11), *dev.curve);
  }
  EXPECT_NEAR(t.rows[0].solar_gwh, wh / 1e9, 1e-9);
  EXPECT_NEAR(t.rows[0].wind_gwh, kwh / 1e6, 1e-9);
  EXPECT_EQ(t.rows[0].combined_gwh, t.rows[0].wind_gwh + t.rows[0].solar_gwh);
}

TEST(MonthlyEnergy, NeedsACurve) {
  const series::TimeAxis axis(series::from_civil(2001, 6, 1), 24);
  EXPECT_THROW((void)monthly_energy(constant_series(axis, 12.0, 0.0, 20.0, 5.0), DeviceConfig{}), Error);
}
