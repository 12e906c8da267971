/**
 * @file pipeline.hpp
 * @brief Runs every selected metric over the points of a manifest.
 *
 * Points are independent: a worker pool claims them one at a time and each
 * result lands in the slot of its point, so the output does not depend on
 * the worker count. A point whose series cannot be read or evaluated is
 * reported as failed without touching the others.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "synergy/association.hpp"
#include "synergy/config.hpp"
#include "synergy/events.hpp"
#include "synergy/manifest.hpp"
#include "synergy/power.hpp"
#include "synergy/registry.hpp"
#include "synergy/series.hpp"

namespace synergy::pipeline {

/// One (metric, scale) column of the output.
struct PlanEntry {
  const registry::MetricSpec* spec{};
  series::ScaleKey scale;

  [[nodiscard]] std::string scale_label() const { return scale.label(); }
};

/// Selected metrics in registry order, each at its scales (requested scales for scaled metrics).
[[nodiscard]] std::vector<PlanEntry> make_plan(const config::PipelineConfig& cfg);

struct PointResult {
  std::string failure;  // empty on success
  std::size_t hours{};
  std::vector<Metric> cells;  // parallel to the plan
  std::vector<association::CorrelationTriple> correlations;
  std::optional<events::EventReport> events;
  std::string events_status;  // reason when `events` is absent
  std::optional<power::MonthlyEnergyTable> energy;

  [[nodiscard]] bool ok() const noexcept { return failure.empty(); }
};

/// Evaluates one point. Throws on invalid input; run() turns that into a failure.
[[nodiscard]] PointResult compute_point(const series::ResourceSeries& series, const config::PipelineConfig& cfg,
                                        const std::vector<PlanEntry>& plan, bool with_energy);

/// Per-point values of one plan entry, in output order.
struct MetricGrid {
  std::string metric;
  std::string scale;
  std::vector<Metric> values;
};

struct ScaleAgreement {
  std::string scale;
  association::AgreementTable table;
};

struct RunResult {
  /// Sorted by point id, so permuting the manifest does not change the output.
  std::vector<manifest::GridPoint> points;
  std::vector<PointResult> results;
  std::vector<PlanEntry> plan;
  std::vector<ScaleAgreement> agreement;
  double elapsed_seconds{};
  unsigned workers{};

  [[nodiscard]] std::size_t failed() const noexcept;
  [[nodiscard]] MetricGrid grid(std::size_t plan_index) const;
};

/// True when the config asks for an energy table at this point and a turbine is configured.
[[nodiscard]] bool wants_energy(const config::PipelineConfig& cfg, const std::string& point_id);

/// Computes every point with cfg.workers threads; never throws for per-point problems.
[[nodiscard]] RunResult run(const manifest::GridManifest& manifest, const config::PipelineConfig& cfg);

}  // namespace synergy::pipeline
