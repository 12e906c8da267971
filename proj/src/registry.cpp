#include "synergy/registry.hpp"

#include <algorithm>
#include <array>

#include "synergy/metric.hpp"

namespace synergy::registry {

namespace {

using enum Group;

constexpr std::array kMetrics{
    MetricSpec{"wp_mean", Variability, false, "hourly", "mean wind power density (W/m2)"},
    MetricSpec{"sp_mean", Variability, false, "hourly", "mean solar irradiance (W/m2)"},
    MetricSpec{"wp_p50", Variability, false, "hourly", "50th percentile of hourly WP"},
    MetricSpec{"wp_p75", Variability, false, "hourly", "75th percentile of hourly WP"},
    MetricSpec{"wp_p90", Variability, false, "hourly", "90th percentile of hourly WP"},
    MetricSpec{"wp_p95", Variability, false, "hourly", "95th percentile of hourly WP"},
    MetricSpec{"sp_p50", Variability, false, "hourly", "50th percentile of hourly SP"},
    MetricSpec{"sp_p75", Variability, false, "hourly", "75th percentile of hourly SP"},
    MetricSpec{"sp_p90", Variability, false, "hourly", "90th percentile of hourly SP"},
    MetricSpec{"sp_p95", Variability, false, "hourly", "95th percentile of hourly SP"},
    MetricSpec{"wp_cv", Variability, true, "", "coefficient of variation of WP"},
    MetricSpec{"sp_cv", Variability, true, "", "coefficient of variation of SP"},
    MetricSpec{"wp_rcv", Variability, true, "", "robust (MAD/median) coefficient of variation of WP"},
    MetricSpec{"sp_rcv", Variability, true, "", "robust (MAD/median) coefficient of variation of SP"},
    MetricSpec{"wp_mav", Variability, false, "annual", "mean annual variability of WP"},
    MetricSpec{"wp_iav", Variability, false, "annual", "inter-annual variability of WP"},
    MetricSpec{"wp_mv", Variability, false, "monthly", "monthly variability of WP"},
    MetricSpec{"wp_sv", Variability, false, "seasonal", "seasonal variability of WP"},
    MetricSpec{"sp_mav", Variability, false, "annual", "mean annual variability of SP"},
    MetricSpec{"sp_iav", Variability, false, "annual", "inter-annual variability of SP"},
    MetricSpec{"sp_mv", Variability, false, "monthly", "monthly variability of SP"},
    MetricSpec{"sp_sv", Variability, false, "seasonal", "seasonal variability of SP"},
    MetricSpec{"jcv", Variability, true, "", "joint coefficient of variation of WP and SP"},
    MetricSpec{"pearson", Association, true, "", "Pearson correlation of WP and SP"},
    MetricSpec{"kendall", Association, true, "", "Kendall tau-b of WP and SP"},
    MetricSpec{"cmed", Association, true, "", "correlation median estimator of WP and SP"},
    MetricSpec{"wcs", Events, false, "hourly", "Pr[wind on, solar off]"},
    MetricSpec{"scw", Events, false, "hourly", "Pr[solar on, wind off]"},
    MetricSpec{"uws", Events, false, "hourly", "Pr[both off]"},
    MetricSpec{"sws", Events, false, "hourly", "Pr[exactly one on]"},
    MetricSpec{"both_available", Events, false, "hourly", "Pr[both on]"},
    MetricSpec{"d_nw_mean", Events, false, "hourly", "mean wind-off run length (h), wind-eligible points"},
    MetricSpec{"d_nw_max", Events, false, "hourly", "longest wind-off run (h), wind-eligible points"},
    MetricSpec{"d_ns_mean", Events, false, "hourly", "mean solar-off run length (h), solar-eligible points"},
    MetricSpec{"d_ns_max", Events, false, "hourly", "longest solar-off run (h), solar-eligible points"},
    MetricSpec{"d_joint_mean", Events, false, "hourly", "mean joint-off run length (h), doubly eligible points"},
    MetricSpec{"d_joint_max", Events, false, "hourly", "longest joint-off run (h), doubly eligible points"},
};

}  // namespace

std::span<const MetricSpec> metrics() { return kMetrics; }

const MetricSpec* find(std::string_view name) noexcept {
  for (const auto& m : kMetrics) {
    if (m.name == name) {
      return &m;
    }
  }
  return nullptr;
}

std::string_view to_string(Group g) noexcept {
  switch (g) {
    case Variability:
      return "variability";
    case Association:
      return "association";
    case Events:
      return "events";
  }
  return "unknown";
}

std::optional<Group> parse_group(std::string_view text) noexcept {
  for (auto g : {Variability, Association, Events}) {
    if (to_string(g) == text) {
      return g;
    }
  }
  return std::nullopt;
}

std::vector<const MetricSpec*> select(std::span<const std::string> selection) {
  std::vector<bool> chosen(kMetrics.size(), false);
  for (const auto& item : selection) {
    if (item == "all") {
      std::fill(chosen.begin(), chosen.end(), true);
    } else if (auto g = parse_group(item)) {
      for (std::size_t i = 0; i < kMetrics.size(); ++i) {
        chosen[i] = chosen[i] || kMetrics[i].group == *g;
      }
    } else if (const auto* m = find(item)) {
      chosen[static_cast<std::size_t>(m - kMetrics.data())] = true;
    } else {
      throw InputError("unknown metric '" + item + "'");
    }
  }
  std::vector<const MetricSpec*> out;
  for (std::size_t i = 0; i < kMetrics.size(); ++i) {
    if (chosen[i]) {
      out.push_back(&kMetrics[i]);
    }
  }
  return out;
}

std::vector<series::ScaleKey> expand_scales(std::span<const series::TimeScale> scales) {
  std::vector<series::ScaleKey> out;
  for (auto s : scales) {
    if (s == series::TimeScale::Seasonal) {
      for (auto season : series::kSeasons) {
        out.push_back({s, season});
      }
    } else {
      out.push_back({s, std::nullopt});
    }
  }
  return out;
}

}  // namespace synergy::registry
