/**
 * @file association.hpp
 * @brief Pearson, Kendall tau-b and correlation-median estimators, and cross-estimator agreement tallies.
 */
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "synergy/metric.hpp"
#include "synergy/series.hpp"

namespace synergy::association {

/// Sample product-moment correlation. Undefined for a constant argument.
[[nodiscard]] Metric pearson(std::span<const double> x, std::span<const double> y);

/**
 * @brief Pair counts behind Kendall's tau-b.
 *
 * `score` is N_C - N_D; `tied_x`/`tied_y` count pairs tied in x (y),
 * including pairs tied in both.
 */
struct KendallCounts {
  std::int64_t pairs{};
  std::int64_t score{};
  std::int64_t tied_x{};
  std::int64_t tied_y{};
};

/// O(n log n) counting (sort by x, merge-sort y counting inversions).
[[nodiscard]] KendallCounts kendall_counts(std::span<const double> x, std::span<const double> y);
/// (N_C - N_D) / sqrt((n0 - T_x)(n0 - T_y)); undefined when either side is all ties.
[[nodiscard]] Metric tau_b(const KendallCounts& counts);
[[nodiscard]] Metric kendall_tau(std::span<const double> x, std::span<const double> y);

/**
 * Correlation median estimator: both series are standardised by
 * (value - median) / MAD, u = sum and v = difference of the standardised
 * values, result (med^2|u| - med^2|v|) / (med^2|u| + med^2|v|).
 */
[[nodiscard]] Metric r_cmed(std::span<const double> x, std::span<const double> y);

enum class Estimator : std::uint8_t { Pearson = 0, Cmed = 1, Kendall = 2 };
inline constexpr std::array<Estimator, 3> kEstimators{Estimator::Pearson, Estimator::Cmed, Estimator::Kendall};
[[nodiscard]] std::string_view to_string(Estimator e) noexcept;

struct CorrelationTriple {
  series::ScaleKey scale;
  std::size_t n{};
  Metric pearson = Metric::undefined("not_computed");
  Metric kendall = Metric::undefined("not_computed");
  Metric cmed = Metric::undefined("not_computed");

  [[nodiscard]] const Metric& get(Estimator e) const noexcept;
};

/// All three estimators on the same pairs. Lengths must match and n >= 3.
[[nodiscard]] CorrelationTriple correlate(std::span<const double> x, std::span<const double> y,
                                          const series::ScaleKey& scale = {});

/**
 * Aggregates both hourly series identically and correlates them. Seasonal
 * scale yields one triple per season (the yearly means of that season);
 * every other scale yields a single triple.
 */
[[nodiscard]] std::vector<CorrelationTriple> correlate_at_scale(std::span<const double> x, std::span<const double> y,
                                                                const series::TimeAxis& axis,
                                                                series::TimeScale scale);

struct SignTally {
  std::size_t positive{};
  std::size_t negative{};
  std::size_t zero{};
  std::size_t undefined{};
};

/// "Same sign" means both positive or both negative; zero and undefined cells are excluded.
struct PairTally {
  Estimator first{};
  Estimator second{};
  std::size_t both_positive{};
  std::size_t both_negative{};
  std::size_t within_tolerance{};
  std::size_t excluded{};

  [[nodiscard]] std::size_t same_sign() const noexcept { return both_positive + both_negative; }
};

struct AgreementTable {
  std::size_t total{};
  double tolerance{0.1};
  std::array<SignTally, 3> single{};  // indexed by Estimator
  std::array<PairTally, 3> pairs{};   // (r, cmed), (r, tau), (cmed, tau)
};

[[nodiscard]] AgreementTable agreement_table(std::span<const CorrelationTriple> grid, double tolerance = 0.1);

}  // namespace synergy::association
