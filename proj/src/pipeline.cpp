#include "synergy/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <map>
#include <numeric>
#include <thread>

#include "synergy/metric.hpp"
#include "synergy/series_io.hpp"
#include "synergy/variability.hpp"

namespace synergy::pipeline {

namespace {

using series::ScaleKey;

Metric guarded(const std::function<Metric()>& fn) {
  try {
    return fn();
  } catch (const InsufficientSpan&) {
    return Metric::undefined("insufficient_span");
  } catch (const DomainError&) {
    return Metric::undefined("domain_error");
  }
}

struct ScaleSample {
  std::vector<double> wp;
  std::vector<double> sp;
  bool available{false};
};

bool is_association(std::string_view name) { return name == "pearson" || name == "kendall" || name == "cmed"; }

class PointEvaluator {
 public:
  PointEvaluator(const series::ResourceSeries& s, const config::PipelineConfig& cfg)
      : series_(s), cfg_(cfg), wp_(power::wind_power_density(s.u100(), cfg.air_density)), sp_(s.ssrd().begin(), s.ssrd().end()) {}

  [[nodiscard]] std::span<const double> wp() const { return wp_; }
  [[nodiscard]] std::span<const double> sp() const { return sp_; }

  const ScaleSample& sample(const ScaleKey& key) {
    const auto label = key.label();
    auto it = samples_.find(label);
    if (it != samples_.end()) {
      return it->second;
    }
    ScaleSample s;
    try {
      s.wp = series::values_at(wp_, series_.axis(), key);
      s.sp = series::values_at(sp_, series_.axis(), key);
      s.available = !s.wp.empty();
    } catch (const InsufficientSpan&) {
      s.available = false;
    }
    return samples_.emplace(label, std::move(s)).first->second;
  }

  const association::CorrelationTriple& triple(const ScaleKey& key) {
    const auto label = key.label();
    auto it = triples_.find(label);
    if (it != triples_.end()) {
      return it->second;
    }
    const auto& s = sample(key);
    association::CorrelationTriple t;
    t.scale = key;
    if (!s.available) {
      t.pearson = t.kendall = t.cmed = Metric::undefined("insufficient_span");
    } else {
      t = association::correlate(s.wp, s.sp, key);
    }
    return triples_.emplace(label, std::move(t)).first->second;
  }

  Metric scaled(std::string_view name, const ScaleKey& key) {
    if (is_association(name)) {
      const auto& t = triple(key);
      return name == "pearson" ? t.pearson : name == "kendall" ? t.kendall : t.cmed;
    }
    const auto& s = sample(key);
    if (!s.available) {
      return Metric::undefined("insufficient_span");
    }
    if (name == "jcv") {
      if (s.wp.size() < 3) {
        return Metric::undefined("insufficient_pairs");
      }
      return guarded([&] { return variability::jcv(s.wp, s.sp); });
    }
    const auto& v = name.starts_with("wp_") ? s.wp : s.sp;
    if (name.ends_with("_rcv")) {
      return guarded([&] { return variability::rcv(v); });
    }
    return guarded([&] { return variability::cv(v); });
  }

  Metric fixed(std::string_view name) {
    const bool wind = name.starts_with("wp_");
    const auto values = wind ? wp() : sp();
    const std::string_view stat = name.starts_with("wp_") || name.starts_with("sp_") ? name.substr(3) : name;
    if (stat == "mean") {
      return guarded([&] { return Metric::of(variability::mean(values)); });
    }
    if (stat.starts_with("p") && stat.size() == 3) {
      const double q = stat == "p50" ? 50.0 : stat == "p75" ? 75.0 : stat == "p90" ? 90.0 : 95.0;
      return guarded([&] { return Metric::of(variability::percentile(values, q)); });
    }
    if (stat == "mav") {
      return guarded([&] { return variability::mav(values, series_.axis()); });
    }
    if (stat == "iav") {
      return guarded([&] { return variability::iav(values, series_.axis()); });
    }
    if (stat == "mv" || stat == "sv") {
      auto& cached = wind ? wind_mvsv_ : solar_mvsv_;
      if (!cached) {
        try {
          cached = variability::mv_sv(values, series_.axis());
        } catch (const InsufficientSpan&) {
          cached = variability::MvSv{Metric::undefined("insufficient_span"), Metric::undefined("insufficient_span")};
        }
      }
      return stat == "mv" ? cached->mv : cached->sv;
    }
    return event_metric(name);
  }

  void ensure_events() {
    if (events_done_) {
      return;
    }
    events_done_ = true;
    try {
      events_ = events::event_report(wp_, sp_, cfg_.thresholds);
    } catch (const InsufficientSpan&) {
      events_status_ = "insufficient_span";
    }
  }

  std::optional<events::EventReport> events_;
  std::string events_status_;

 private:
  Metric event_metric(std::string_view name) {
    ensure_events();
    if (!events_) {
      return Metric::undefined(events_status_);
    }
    const auto& c = events_->counts;
    if (name == "wcs") return Metric::of(c.wcs());
    if (name == "scw") return Metric::of(c.scw());
    if (name == "uws") return Metric::of(c.uws());
    if (name == "sws") return Metric::of(c.sws());
    if (name == "both_available") return Metric::of(c.both_available());
    const auto& d = events_->durations;
    const std::optional<events::RunStats>* stream = name.starts_with("d_nw_")   ? &d.wind
                                                    : name.starts_with("d_ns_") ? &d.solar
                                                                                : &d.joint;
    if (!stream->has_value()) {
      return Metric::undefined("not_eligible");
    }
    if (name.ends_with("_max")) {
      return Metric::of(static_cast<double>((*stream)->max));
    }
    const auto m = (*stream)->mean();
    return m ? Metric::of(*m) : Metric::undefined("no_off_runs");
  }

  const series::ResourceSeries& series_;
  const config::PipelineConfig& cfg_;
  std::vector<double> wp_;
  std::vector<double> sp_;
  std::map<std::string, ScaleSample> samples_;
  std::map<std::string, association::CorrelationTriple> triples_;
  std::optional<variability::MvSv> wind_mvsv_;
  std::optional<variability::MvSv> solar_mvsv_;
  bool events_done_{false};
};

bool plan_has_association(const std::vector<PlanEntry>& plan) {
  return std::any_of(plan.begin(), plan.end(), [](const PlanEntry& e) { return is_association(e.spec->name); });
}

std::vector<ScaleKey> association_keys(const std::vector<PlanEntry>& plan) {
  std::vector<ScaleKey> keys;
  for (const auto& e : plan) {
    if (is_association(e.spec->name) && std::find(keys.begin(), keys.end(), e.scale) == keys.end()) {
      keys.push_back(e.scale);
    }
  }
  return keys;
}

}  // namespace

std::vector<PlanEntry> make_plan(const config::PipelineConfig& cfg) {
  const auto selected = registry::select(cfg.metrics);
  const auto keys = registry::expand_scales(cfg.scales);
  std::vector<PlanEntry> plan;
  for (const auto* spec : selected) {
    if (spec->scaled) {
      for (const auto& k : keys) {
        plan.push_back({spec, k});
      }
    } else {
      const auto key = series::parse_scale_key(spec->fixed_scale);
      plan.push_back({spec, key.value_or(ScaleKey{})});
    }
  }
  return plan;
}

PointResult compute_point(const series::ResourceSeries& series, const config::PipelineConfig& cfg,
                          const std::vector<PlanEntry>& plan, bool with_energy) {
  PointEvaluator ev(series, cfg);
  PointResult out;
  out.hours = series.size();
  out.cells.reserve(plan.size());
  for (const auto& e : plan) {
    out.cells.push_back(e.spec->scaled ? ev.scaled(e.spec->name, e.scale) : ev.fixed(e.spec->name));
  }
  if (plan_has_association(plan)) {
    for (const auto& key : association_keys(plan)) {
      out.correlations.push_back(ev.triple(key));
    }
  }
  ev.ensure_events();
  out.events = ev.events_;
  out.events_status = ev.events_status_;
  if (with_energy) {
    out.energy = power::monthly_energy(series, cfg.device);
  }
  return out;
}

std::size_t RunResult::failed() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [](const PointResult& r) { return !r.ok(); }));
}

MetricGrid RunResult::grid(std::size_t plan_index) const {
  MetricGrid g;
  g.metric = std::string(plan.at(plan_index).spec->name);
  g.scale = plan[plan_index].scale_label();
  g.values.reserve(results.size());
  for (const auto& r : results) {
    g.values.push_back(r.ok() ? r.cells[plan_index] : Metric::undefined("point_failed"));
  }
  return g;
}

bool wants_energy(const config::PipelineConfig& cfg, const std::string& point_id) {
  if (!cfg.device.curve) {
    return false;
  }
  if (!cfg.energy_points) {
    return true;
  }
  const auto& ids = *cfg.energy_points;
  return std::find(ids.begin(), ids.end(), point_id) != ids.end();
}

RunResult run(const manifest::GridManifest& manifest, const config::PipelineConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  RunResult out;
  out.plan = make_plan(cfg);
  out.points = manifest.points;
  std::sort(out.points.begin(), out.points.end(),
            [](const manifest::GridPoint& a, const manifest::GridPoint& b) { return a.id < b.id; });
  out.results.resize(out.points.size());

  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < out.points.size(); i = next.fetch_add(1)) {
      const auto& p = out.points[i];
      PointResult r;
      try {
        const auto s = series::read_series_csv(p.series_path, manifest.units);
        r = compute_point(s, cfg, out.plan, wants_energy(cfg, p.id));
      } catch (const std::exception& e) {
        r = PointResult{};
        r.failure = e.what();
      }
      out.results[i] = std::move(r);
    }
  };
  const unsigned n_workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1U, cfg.workers), std::max<std::size_t>(1, out.points.size())));
  out.workers = n_workers;
  if (n_workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) {
      pool.emplace_back(work);
    }
  }

  if (plan_has_association(out.plan)) {
    for (const auto& key : association_keys(out.plan)) {
      std::vector<association::CorrelationTriple> cells;
      for (const auto& r : out.results) {
        if (!r.ok()) {
          association::CorrelationTriple t;
          t.scale = key;
          t.pearson = t.kendall = t.cmed = Metric::undefined("point_failed");
          cells.push_back(std::move(t));
          continue;
        }
        for (const auto& t : r.correlations) {
          if (t.scale == key) {
            cells.push_back(t);
          }
        }
      }
      out.agreement.push_back({key.label(), association::agreement_table(cells)});
    }
  }
  out.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace synergy::pipeline
