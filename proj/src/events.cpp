#include "synergy/events.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "synergy/metric.hpp"

namespace synergy::events {

void Thresholds::validate() const {
  if (!(wp_l >= 0.0) || !(sp_l >= 0.0) || !std::isfinite(wp_l) || !std::isfinite(sp_l)) {
    throw InputError("thresholds must be finite and >= 0");
  }
}

EventFlags classify_events(std::span<const double> wp, std::span<const double> sp, const Thresholds& th) {
  if (wp.size() != sp.size()) {
    throw DomainError("wind and solar series are not aligned");
  }
  EventFlags flags;
  flags.wind.resize(wp.size());
  flags.solar.resize(sp.size());
  for (std::size_t i = 0; i < wp.size(); ++i) {
    flags.wind[i] = wp[i] > th.wp_l ? 1 : 0;
    flags.solar[i] = sp[i] > th.sp_l ? 1 : 0;
  }
  return flags;
}

EventCounts indices(const EventFlags& flags) {
  if (flags.wind.size() != flags.solar.size()) {
    throw DomainError("event flags are not aligned");
  }
  if (flags.wind.empty()) {
    throw DomainError("event indices of an empty series");
  }
  EventCounts c;
  c.total = flags.size();
  for (std::size_t i = 0; i < c.total; ++i) {
    const bool w = flags.wind[i] != 0;
    const bool s = flags.solar[i] != 0;
    if (w && s) {
      ++c.both;
    } else if (w) {
      ++c.wind_only;
    } else if (s) {
      ++c.solar_only;
    } else {
      ++c.neither;
    }
  }
  return c;
}

Eligibility eligibility(std::span<const double> wp, std::span<const double> sp, const Thresholds& th) {
  if (wp.empty() || wp.size() != sp.size()) {
    throw DomainError("eligibility needs aligned, non-empty series");
  }
  const auto mean = [](std::span<const double> v) {
    double s = 0.0;
    for (double x : v) {
      s += x;
    }
    return s / static_cast<double>(v.size());
  };
  Eligibility e;
  e.wp_an = mean(wp);
  e.sp_an = mean(sp);
  e.wind = e.wp_an > th.wp_l;
  e.solar = e.sp_an > th.sp_l;
  return e;
}

std::optional<double> RunStats::mean() const noexcept {
  if (runs == 0) {
    return std::nullopt;
  }
  return static_cast<double>(off_hours) / static_cast<double>(runs);
}

namespace {

template <typename OffAt>
RunStats scan(std::size_t n, OffAt off_at) {
  RunStats s;
  std::size_t current = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (off_at(i)) {
      ++current;
      continue;
    }
    if (current > 0) {
      ++s.runs;
      s.off_hours += current;
      s.max = std::max(s.max, current);
      current = 0;
    }
  }
  if (current > 0) {
    ++s.runs;
    s.off_hours += current;
    s.max = std::max(s.max, current);
  }
  return s;
}

}  // namespace

RunStats off_runs(std::span<const std::uint8_t> available) {
  return scan(available.size(), [&](std::size_t i) { return available[i] == 0; });
}

RunStats joint_off_runs(std::span<const std::uint8_t> wind, std::span<const std::uint8_t> solar) {
  if (wind.size() != solar.size()) {
    throw DomainError("event flags are not aligned");
  }
  return scan(wind.size(), [&](std::size_t i) { return wind[i] == 0 && solar[i] == 0; });
}

DurationStats durations(const EventFlags& flags, const Eligibility& eligible) {
  DurationStats d;
  if (eligible.wind) {
    d.wind = off_runs(flags.wind);
  }
  if (eligible.solar) {
    d.solar = off_runs(flags.solar);
  }
  if (eligible.wind && eligible.solar) {
    d.joint = joint_off_runs(flags.wind, flags.solar);
  }
  return d;
}

EventReport event_report(std::span<const double> wp, std::span<const double> sp, const Thresholds& th) {
  if (wp.size() != sp.size()) {
    throw DomainError("wind and solar series are not aligned");
  }
  if (wp.size() < kMinReportHours) {
    throw InsufficientSpan("insufficient span: event report needs at least one year of hours");
  }
  th.validate();
  EventReport r;
  const EventFlags flags = classify_events(wp, sp, th);
  r.counts = indices(flags);
  r.eligible = eligibility(wp, sp, th);
  r.durations = durations(flags, r.eligible);
  return r;
}

}  // namespace synergy::events
