#include "synergy/variability.hpp"

#include "compensated_sum.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace synergy::variability {

namespace {

void require_non_empty(std::span<const double> values, const char* what) {
  if (values.empty()) {
    throw DomainError(std::string(what) + " of an empty sample");
  }
}

// Order statistics k and k+1 (0-based) of a scratch copy; k+1 is clamped to n-1.
std::pair<double, double> order_pair(std::vector<double>& scratch, std::size_t k) {
  const auto kth = scratch.begin() + static_cast<std::ptrdiff_t>(k);
  std::nth_element(scratch.begin(), kth, scratch.end());
  const double lo = *kth;
  if (k + 1 >= scratch.size()) {
    return {lo, lo};
  }
  const double hi = *std::min_element(kth + 1, scratch.end());
  return {lo, hi};
}

// Linear interpolation between the order statistics around h = (n-1) q.
double interpolated_order_statistic(std::vector<double>& scratch, double fraction) {
  const double h = static_cast<double>(scratch.size() - 1) * fraction;
  const double lower = std::floor(h);
  const auto [lo, hi] = order_pair(scratch, static_cast<std::size_t>(lower));
  const double frac = h - lower;
  if (frac == 0.0) {
    return lo;
  }
  return lo + frac * (hi - lo);
}

std::vector<series::Period> complete_years(const series::TimeAxis& axis) {
  std::vector<series::Period> years;
  for (auto& p : series::partition(axis, series::TimeScale::Annual)) {
    if (p.complete()) {
      years.push_back(std::move(p));
    }
  }
  return years;
}

void require_axis(std::span<const double> hourly, const series::TimeAxis& axis) {
  if (hourly.size() != axis.size()) {
    throw DomainError("series length does not match time axis");
  }
}

}  // namespace

double mean(std::span<const double> values) {
  require_non_empty(values, "mean");
  detail::CompensatedSum sum;
  for (double v : values) {
    sum += v;
  }
  return sum.value() / static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values) {
  require_non_empty(values, "variance");
  if (values.size() == 1) {
    return 0.0;
  }
  const double m = mean(values);
  detail::CompensatedSum ss;
  for (double v : values) {
    ss += (v - m) * (v - m);
  }
  return ss.value() / static_cast<double>(values.size() - 1);
}

double sample_std(std::span<const double> values) { return std::sqrt(sample_variance(values)); }

double sample_covariance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw DomainError("covariance of samples with different lengths");
  }
  require_non_empty(x, "covariance");
  if (x.size() == 1) {
    return 0.0;
  }
  const double mx = mean(x);
  const double my = mean(y);
  detail::CompensatedSum s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += (x[i] - mx) * (y[i] - my);
  }
  return s.value() / static_cast<double>(x.size() - 1);
}

double median(std::span<const double> values) {
  require_non_empty(values, "median");
  std::vector<double> scratch(values.begin(), values.end());
  return interpolated_order_statistic(scratch, 0.5);
}

MedianMad median_and_mad(std::span<const double> values) {
  const double med = median(values);
  std::vector<double> dev;
  dev.reserve(values.size());
  for (double v : values) {
    dev.push_back(std::abs(v - med));
  }
  return {med, interpolated_order_statistic(dev, 0.5)};
}

Metric rcv(std::span<const double> values) {
  const auto [med, mad] = median_and_mad(values);
  if (med == 0.0) {
    return Metric::undefined("zero_median");
  }
  return Metric::of(mad / med);
}

Metric cv(std::span<const double> values) {
  const double m = mean(values);
  if (values.size() < 2) {
    return Metric::undefined("insufficient_samples");
  }
  if (m == 0.0) {
    return Metric::undefined("zero_mean");
  }
  return Metric::of(sample_std(values) / m);
}

Metric mav(std::span<const double> hourly, const series::TimeAxis& axis) {
  require_axis(hourly, axis);
  const auto years = complete_years(axis);
  if (years.empty()) {
    throw InsufficientSpan("insufficient span: MAV needs at least one complete year");
  }
  double sum = 0.0;
  for (const auto& y : years) {
    const auto block = hourly.subspan(y.begin, y.hours());
    const double m = mean(block);
    if (m == 0.0) {
      return Metric::undefined("zero_annual_mean");
    }
    sum += sample_std(block) / m;
  }
  return Metric::of(sum / static_cast<double>(years.size()));
}

Metric iav(std::span<const double> hourly, const series::TimeAxis& axis) {
  require_axis(hourly, axis);
  const auto years = complete_years(axis);
  if (years.size() < 2) {
    throw InsufficientSpan("insufficient span: IAV needs at least two complete years");
  }
  std::vector<double> annual;
  detail::CompensatedSum total;
  std::size_t hours = 0;
  for (const auto& y : years) {
    const auto block = hourly.subspan(y.begin, y.hours());
    annual.push_back(mean(block));
    for (double v : block) {
      total += v;
    }
    hours += block.size();
  }
  const double overall = total.value() / static_cast<double>(hours);
  if (overall == 0.0) {
    return Metric::undefined("zero_mean");
  }
  return Metric::of(sample_std(annual) / overall);
}

MvSv mv_sv(std::span<const double> hourly, const series::TimeAxis& axis) {
  require_axis(hourly, axis);
  const auto years = complete_years(axis);
  if (years.empty()) {
    throw InsufficientSpan("insufficient span: MV/SV need at least one complete year");
  }
  std::array<detail::CompensatedSum, 12> month_sum{};
  std::array<std::size_t, 12> month_hours{};
  for (const auto& y : years) {
    const series::TimeAxis year_axis{axis.at(y.begin), y.hours()};
    for (const auto& m : series::partition(year_axis, series::TimeScale::Monthly)) {
      for (std::size_t i = m.begin; i < m.end; ++i) {
        month_sum[m.month - 1] += hourly[y.begin + i];
      }
      month_hours[m.month - 1] += m.hours();
    }
  }
  detail::CompensatedSum total;
  std::size_t hours = 0;
  std::array<detail::CompensatedSum, 4> season_sum{};
  std::array<std::size_t, 4> season_hours{};
  double month_max = -INFINITY, month_min = INFINITY;
  for (unsigned m = 1; m <= 12; ++m) {
    const double s = month_sum[m - 1].value();
    const std::size_t h = month_hours[m - 1];
    total += s;
    hours += h;
    const auto season = static_cast<std::size_t>(series::season_of_month(m));
    season_sum[season] += s;
    season_hours[season] += h;
    const double mm = s / static_cast<double>(h);
    month_max = std::max(month_max, mm);
    month_min = std::min(month_min, mm);
  }
  double season_max = -INFINITY, season_min = INFINITY;
  for (std::size_t s = 0; s < 4; ++s) {
    const double sm = season_sum[s].value() / static_cast<double>(season_hours[s]);
    season_max = std::max(season_max, sm);
    season_min = std::min(season_min, sm);
  }
  const double overall = total.value() / static_cast<double>(hours);
  if (overall == 0.0) {
    return {Metric::undefined("zero_mean"), Metric::undefined("zero_mean")};
  }
  return {Metric::of((month_max - month_min) / overall), Metric::of((season_max - season_min) / overall)};
}

Metric jcv(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw DomainError("jcv of samples with different lengths");
  }
  if (x.size() < 3) {
    throw DomainError("jcv needs at least 3 paired values");
  }
  const double mx = mean(x);
  const double my = mean(y);
  const double sxx = sample_variance(x);
  const double syy = sample_variance(y);
  const double sxy = sample_covariance(x, y);
  const double det = sxx * syy - sxy * sxy;
  // A rank-deficient sample (|correlation| = 1 or a constant marginal) has no joint spread.
  if (det <= 1e-12 * sxx * syy) {
    return Metric::of(0.0);
  }
  const double den = mx * mx * syy - 2.0 * mx * my * sxy + my * my * sxx;
  if (!(den > 0.0)) {
    return Metric::undefined("singular_denominator");
  }
  return Metric::of(std::sqrt(det / den));
}

Metric jcv_univariate(std::span<const double> x) {
  // sqrt(1 / (m s^-2 m)) reduces to s / |m| for a single variable.
  const double m = mean(x);
  if (m == 0.0) {
    return Metric::undefined("zero_mean");
  }
  return Metric::of(sample_std(x) / std::abs(m));
}

double percentile(std::span<const double> values, double q) {
  require_non_empty(values, "percentile");
  if (!(q >= 0.0 && q <= 100.0)) {
    throw DomainError("percentile must lie in [0, 100]");
  }
  std::vector<double> scratch(values.begin(), values.end());
  return interpolated_order_statistic(scratch, q / 100.0);
}

std::map<double, double> percentiles(std::span<const double> values, std::span<const double> qs) {
  require_non_empty(values, "percentile");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::map<double, double> out;
  for (double q : qs) {
    if (!(q >= 0.0 && q <= 100.0)) {
      throw DomainError("percentile must lie in [0, 100]");
    }
    const double h = static_cast<double>(sorted.size() - 1) * (q / 100.0);
    const double lower = std::floor(h);
    const auto k = static_cast<std::size_t>(lower);
    const double frac = h - lower;
    out[q] = frac == 0.0 ? sorted[k] : sorted[k] + frac * (sorted[k + 1] - sorted[k]);
  }
  return out;
}

VariabilitySummary summarize(std::span<const double> hourly, const series::TimeAxis& axis,
                             const series::ScaleKey& scale) {
  VariabilitySummary out;
  out.scale = scale;
  const auto guard = [](auto&& fn) -> Metric {
    try {
      return fn();
    } catch (const Error& e) {
      return Metric::undefined(dynamic_cast<const InsufficientSpan*>(&e) ? "insufficient_span" : "error");
    }
  };
  std::vector<double> sample;
  try {
    sample = series::values_at(hourly, axis, scale);
  } catch (const InsufficientSpan&) {
  }
  out.n = sample.size();
  if (!sample.empty()) {
    out.cv = cv(sample);
    out.rcv = rcv(sample);
    out.percentiles = percentiles(sample);
  } else {
    out.cv = Metric::undefined("insufficient_span");
    out.rcv = Metric::undefined("insufficient_span");
  }
  out.mav = guard([&] { return mav(hourly, axis); });
  out.iav = guard([&] { return iav(hourly, axis); });
  const auto mvsv = [&]() -> MvSv {
    try {
      return mv_sv(hourly, axis);
    } catch (const InsufficientSpan&) {
      return {Metric::undefined("insufficient_span"), Metric::undefined("insufficient_span")};
    }
  }();
  out.mv = mvsv.mv;
  out.sv = mvsv.sv;
  return out;
}

}  // namespace synergy::variability
