/**
 * @file variability.hpp
 * @brief Classical, robust and joint variability statistics.
 *
 * Sample standard deviations and covariances use the N-1 denominator.
 * Statistics that cannot be formed (zero mean or median, singular
 * covariance) come back as undefined Metric values; empty inputs and
 * insufficient calendar spans throw.
 */
#pragma once

#include <map>
#include <span>
#include <vector>

#include "synergy/metric.hpp"
#include "synergy/series.hpp"

namespace synergy::variability {

[[nodiscard]] double mean(std::span<const double> values);
/// N-1 denominator; 0 for a single value.
[[nodiscard]] double sample_variance(std::span<const double> values);
[[nodiscard]] double sample_std(std::span<const double> values);
[[nodiscard]] double sample_covariance(std::span<const double> x, std::span<const double> y);

/// Midpoint of the two central order statistics for even n.
[[nodiscard]] double median(std::span<const double> values);

struct MedianMad {
  double median{};
  double mad{};  // med |x_i - median|, no consistency factor
};

[[nodiscard]] MedianMad median_and_mad(std::span<const double> values);

/// MAD / median.
[[nodiscard]] Metric rcv(std::span<const double> values);
/// sample std / mean; undefined below two values.
[[nodiscard]] Metric cv(std::span<const double> values);

/// Mean over complete years of each year's std/mean.
[[nodiscard]] Metric mav(std::span<const double> hourly, const series::TimeAxis& axis);
/// Std of complete-year annual means over the mean of all their hours.
[[nodiscard]] Metric iav(std::span<const double> hourly, const series::TimeAxis& axis);

struct MvSv {
  Metric mv;
  Metric sv;
};

/**
 * Range of climatological monthly (seasonal) means divided by the overall
 * mean. Climatologies pool every hour of the complete calendar years.
 */
[[nodiscard]] MvSv mv_sv(std::span<const double> hourly, const series::TimeAxis& axis);

/// Bivariate coefficient of variation sqrt(1 / (m' S^-1 m)) in closed form.
[[nodiscard]] Metric jcv(std::span<const double> x, std::span<const double> y);
/// The same estimator for a single variable: sqrt(1 / (m s^-2 m)).
[[nodiscard]] Metric jcv_univariate(std::span<const double> x);

inline const std::vector<double> kDefaultPercentiles{50.0, 75.0, 90.0, 95.0};

/// Linear interpolation between order statistics (h = (n-1) q / 100).
[[nodiscard]] double percentile(std::span<const double> values, double q);
[[nodiscard]] std::map<double, double> percentiles(std::span<const double> values,
                                                   std::span<const double> qs = kDefaultPercentiles);

/**
 * @brief Univariate variability at one time scale.
 *
 * cv, rcv and the percentiles describe the sample at `scale`; mav, iav, mv
 * and sv are computed from the hourly series regardless of scale.
 */
struct VariabilitySummary {
  series::ScaleKey scale;
  std::size_t n{};
  Metric cv = Metric::undefined("not_computed");
  Metric rcv = Metric::undefined("not_computed");
  Metric mav = Metric::undefined("not_computed");
  Metric iav = Metric::undefined("not_computed");
  Metric mv = Metric::undefined("not_computed");
  Metric sv = Metric::undefined("not_computed");
  std::map<double, double> percentiles;
};

/// Errors in individual statistics become undefined entries.
[[nodiscard]] VariabilitySummary summarize(std::span<const double> hourly, const series::TimeAxis& axis,
                                           const series::ScaleKey& scale);

}  // namespace synergy::variability
