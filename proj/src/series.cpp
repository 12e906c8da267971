#include "synergy/series.hpp"

#include "compensated_sum.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "synergy/metric.hpp"

namespace synergy::series {

namespace chr = std::chrono;

CivilHour to_civil(Hour h) {
  const auto day = chr::floor<chr::days>(h);
  const chr::year_month_day ymd{day};
  return CivilHour{static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                   static_cast<unsigned>((h - day).count())};
}

Hour from_civil(int year, unsigned month, unsigned day, unsigned hour) {
  const chr::year_month_day ymd{chr::year{year}, chr::month{month}, chr::day{day}};
  if (!ymd.ok() || hour > 23) {
    throw DomainError("invalid civil time " + std::to_string(year) + "-" + std::to_string(month) + "-" +
                      std::to_string(day) + " " + std::to_string(hour) + "h");
  }
  return chr::sys_days{ymd} + chr::hours{hour};
}

bool is_leap_year(int year) noexcept { return chr::year{year}.is_leap(); }

unsigned days_in_month(int year, unsigned month) noexcept {
  static constexpr std::array<unsigned, 12> kDays{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2 && is_leap_year(year)) {
    return 29;
  }
  return kDays.at(month - 1);
}

std::string format_iso(Hour h) {
  const CivilHour c = to_civil(h);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02u:00:00Z", c.year, c.month, c.day, c.hour);
  return buf;
}

namespace {

bool read_fixed(std::string_view text, std::size_t pos, std::size_t width, int& out) {
  if (pos + width > text.size()) {
    return false;
  }
  for (std::size_t i = pos; i < pos + width; ++i) {
    if (text[i] < '0' || text[i] > '9') {
      return false;
    }
  }
  const auto* first = text.data() + pos;
  return std::from_chars(first, first + width, out).ec == std::errc{};
}

}  // namespace

std::optional<Hour> parse_iso(std::string_view text) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  if (!read_fixed(text, 0, 4, y) || text.size() < 13 || text[4] != '-' || !read_fixed(text, 5, 2, mo) ||
      text[7] != '-' || !read_fixed(text, 8, 2, d) || (text[10] != 'T' && text[10] != ' ') ||
      !read_fixed(text, 11, 2, h)) {
    return std::nullopt;
  }
  std::size_t pos = 13;
  if (pos < text.size() && text[pos] == ':') {
    if (!read_fixed(text, pos + 1, 2, mi)) {
      return std::nullopt;
    }
    pos += 3;
    if (pos < text.size() && text[pos] == ':') {
      if (!read_fixed(text, pos + 1, 2, s)) {
        return std::nullopt;
      }
      pos += 3;
    }
  }
  const std::string_view suffix = text.substr(pos);
  if (!(suffix.empty() || suffix == "Z" || suffix == "+00:00" || suffix == "+0000")) {
    return std::nullopt;
  }
  if (mi != 0 || s != 0 || h > 23) {
    return std::nullopt;
  }
  const chr::year_month_day ymd{chr::year{y}, chr::month{static_cast<unsigned>(mo)}, chr::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) {
    return std::nullopt;
  }
  return chr::sys_days{ymd} + chr::hours{h};
}

std::string_view to_string(TimeScale s) noexcept {
  switch (s) {
    case TimeScale::Hourly:
      return "hourly";
    case TimeScale::Daily:
      return "daily";
    case TimeScale::Monthly:
      return "monthly";
    case TimeScale::Seasonal:
      return "seasonal";
    case TimeScale::Annual:
      return "annual";
  }
  return "unknown";
}

std::string_view to_string(Season s) noexcept {
  switch (s) {
    case Season::DJF:
      return "DJF";
    case Season::MAM:
      return "MAM";
    case Season::JJA:
      return "JJA";
    case Season::SON:
      return "SON";
  }
  return "unknown";
}

std::optional<TimeScale> parse_time_scale(std::string_view text) noexcept {
  for (auto s : {TimeScale::Hourly, TimeScale::Daily, TimeScale::Monthly, TimeScale::Seasonal, TimeScale::Annual}) {
    if (to_string(s) == text) {
      return s;
    }
  }
  return std::nullopt;
}

Season season_of_month(unsigned month) noexcept {
  switch (month) {
    case 12:
    case 1:
    case 2:
      return Season::DJF;
    case 3:
    case 4:
    case 5:
      return Season::MAM;
    case 6:
    case 7:
    case 8:
      return Season::JJA;
    default:
      return Season::SON;
  }
}

std::string ScaleKey::label() const {
  std::string out{to_string(scale)};
  if (season) {
    out += '-';
    out += to_string(*season);
  }
  return out;
}

std::optional<ScaleKey> parse_scale_key(std::string_view text) noexcept {
  const auto dash = text.find('-');
  const auto scale = parse_time_scale(text.substr(0, dash));
  if (!scale) {
    return std::nullopt;
  }
  if (dash == std::string_view::npos) {
    return ScaleKey{*scale, std::nullopt};
  }
  if (*scale != TimeScale::Seasonal) {
    return std::nullopt;
  }
  const auto tail = text.substr(dash + 1);
  for (Season s : kSeasons) {
    if (to_string(s) == tail) {
      return ScaleKey{TimeScale::Seasonal, s};
    }
  }
  return std::nullopt;
}

namespace {

struct BucketKey {
  int year{};
  unsigned month{};
  unsigned sub{};
  friend bool operator==(const BucketKey&, const BucketKey&) = default;
};

BucketKey bucket_of(const CivilHour& c, TimeScale scale) {
  switch (scale) {
    case TimeScale::Daily:
      return {c.year, c.month, c.day};
    case TimeScale::Monthly:
      return {c.year, c.month, 0};
    case TimeScale::Seasonal:
      return {c.month == 12 ? c.year + 1 : c.year, 0, static_cast<unsigned>(season_of_month(c.month))};
    case TimeScale::Annual:
    case TimeScale::Hourly:
      break;
  }
  return {c.year, 0, 0};
}

std::size_t expected_hours(const BucketKey& k, TimeScale scale) {
  switch (scale) {
    case TimeScale::Daily:
      return 24;
    case TimeScale::Monthly:
      return 24u * days_in_month(k.year, k.month);
    case TimeScale::Seasonal: {
      static constexpr std::array<std::array<unsigned, 3>, 4> kMonths{{{12, 1, 2}, {3, 4, 5}, {6, 7, 8}, {9, 10, 11}}};
      std::size_t total = 0;
      for (unsigned m : kMonths.at(k.sub)) {
        total += 24u * days_in_month(m == 12 ? k.year - 1 : k.year, m);
      }
      return total;
    }
    case TimeScale::Annual:
    case TimeScale::Hourly:
      break;
  }
  return is_leap_year(k.year) ? 8784 : 8760;
}

std::string label_of(const BucketKey& k, TimeScale scale) {
  char buf[32];
  switch (scale) {
    case TimeScale::Daily:
      std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", k.year, k.month, k.sub);
      break;
    case TimeScale::Monthly:
      std::snprintf(buf, sizeof buf, "%04d-%02u", k.year, k.month);
      break;
    case TimeScale::Seasonal:
      std::snprintf(buf, sizeof buf, "%04d-%s", k.year, to_string(static_cast<Season>(k.sub)).data());
      break;
    case TimeScale::Annual:
    case TimeScale::Hourly:
      std::snprintf(buf, sizeof buf, "%04d", k.year);
      break;
  }
  return buf;
}

double mean_of(std::span<const double> v) {
  detail::CompensatedSum sum;
  for (double x : v) {
    sum += x;
  }
  return sum.value() / static_cast<double>(v.size());
}

}  // namespace

std::vector<Period> partition(const TimeAxis& axis, TimeScale scale) {
  if (scale == TimeScale::Hourly) {
    throw DomainError("hourly is not a partition scale");
  }
  std::vector<Period> out;
  if (axis.empty()) {
    return out;
  }
  // Walk day by day: every scale above hourly is a union of whole days.
  const auto first_day = chr::floor<chr::days>(axis.start());
  const auto last_day = chr::floor<chr::days>(axis.at(axis.size() - 1));
  std::optional<BucketKey> current;
  for (auto day = first_day; day <= last_day; day += chr::days{1}) {
    const Hour day_start{day};
    const std::size_t begin =
        day_start <= axis.start() ? 0 : static_cast<std::size_t>((day_start - axis.start()).count());
    const auto next = Hour{day + chr::days{1}};
    const std::size_t end =
        next >= axis.end() ? axis.size() : static_cast<std::size_t>((next - axis.start()).count());
    const BucketKey key = bucket_of(to_civil(day_start), scale);
    if (!current || !(*current == key)) {
      out.push_back(Period{label_of(key, scale), key.year, key.month, key.sub, begin, end, expected_hours(key, scale)});
      current = key;
    } else {
      out.back().end = end;
    }
  }
  return out;
}

std::vector<Period> season_partition(const TimeAxis& axis) { return partition(axis, TimeScale::Seasonal); }

std::vector<std::string> AggregatedSeries::labels() const {
  std::vector<std::string> out;
  out.reserve(periods.size());
  for (const auto& p : periods) {
    out.push_back(p.label);
  }
  return out;
}

AggregatedSeries aggregate(std::span<const double> hourly, const TimeAxis& axis, TimeScale scale) {
  if (hourly.size() != axis.size()) {
    throw DomainError("series length does not match time axis");
  }
  AggregatedSeries out;
  out.scale = scale;
  for (auto& p : partition(axis, scale)) {
    if (!p.complete()) {
      out.dropped.push_back(p.label);
      continue;
    }
    out.values.push_back(mean_of(hourly.subspan(p.begin, p.hours())));
    out.periods.push_back(std::move(p));
  }
  if (out.values.empty()) {
    throw InsufficientSpan("insufficient span: no complete " + std::string(to_string(scale)) + " period");
  }
  return out;
}

std::vector<double> values_at(std::span<const double> hourly, const TimeAxis& axis, const ScaleKey& key) {
  if (key.scale == TimeScale::Hourly) {
    if (hourly.size() != axis.size()) {
      throw DomainError("series length does not match time axis");
    }
    return {hourly.begin(), hourly.end()};
  }
  AggregatedSeries agg = aggregate(hourly, axis, key.scale);
  if (!key.season) {
    return std::move(agg.values);
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < agg.size(); ++i) {
    if (agg.periods[i].sub == static_cast<unsigned>(*key.season)) {
      out.push_back(agg.values[i]);
    }
  }
  if (out.empty()) {
    throw InsufficientSpan("insufficient span: no complete " + key.label() + " period");
  }
  return out;
}

std::vector<double> normalize_irradiance(std::span<const double> joules_per_m2) {
  std::vector<double> out;
  out.reserve(joules_per_m2.size());
  for (std::size_t i = 0; i < joules_per_m2.size(); ++i) {
    const double v = joules_per_m2[i];
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InputError("row " + std::to_string(i) + ": accumulated irradiance must be finite and >= 0");
    }
    out.push_back(v / 3600.0);
  }
  return out;
}

ResourceSeries::ResourceSeries(TimeAxis axis, std::vector<double> u100, std::vector<double> ssrd, std::vector<double> t2m,
                               std::vector<double> u10, SeriesMetadata metadata)
    : axis_(axis),
      u100_(std::move(u100)),
      ssrd_(std::move(ssrd)),
      t2m_(std::move(t2m)),
      u10_(std::move(u10)),
      metadata_(std::move(metadata)) {
  const std::size_t n = axis_.size();
  if (u100_.size() != n || ssrd_.size() != n || t2m_.size() != n || u10_.size() != n) {
    throw InputError("resource columns must all match the time axis length");
  }
  const auto check = [](std::span<const double> col, const char* name, bool non_negative) {
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (!std::isfinite(col[i]) || (non_negative && col[i] < 0.0)) {
        throw InputError(std::string("row ") + std::to_string(i) + ": invalid " + name + " value");
      }
    }
  };
  check(u100_, "u100", true);
  check(ssrd_, "ssrd", true);
  check(t2m_, "t2m", false);
  check(u10_, "u10", true);
}

}  // namespace synergy::series
