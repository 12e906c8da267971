#include "synergy/association.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "synergy/variability.hpp"

namespace synergy::association {

namespace {

void require_pairs(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw DomainError("paired samples must have equal lengths");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw DomainError("paired samples must be finite");
    }
  }
}

std::int64_t tied_pairs(std::int64_t run) { return run * (run - 1) / 2; }

// Sorts `v` ascending and returns the number of inversions (pairs i < j with v[i] > v[j]).
std::int64_t count_inversions(std::vector<double>& v, std::vector<double>& scratch) {
  const std::size_t n = v.size();
  std::int64_t swaps = 0;
  scratch.resize(n);
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo < n; lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, n);
      const std::size_t hi = std::min(lo + 2 * width, n);
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (v[j] < v[i]) {
          swaps += static_cast<std::int64_t>(mid - i);
          scratch[k++] = v[j++];
        } else {
          scratch[k++] = v[i++];
        }
      }
      while (i < mid) {
        scratch[k++] = v[i++];
      }
      while (j < hi) {
        scratch[k++] = v[j++];
      }
    }
    v.swap(scratch);
  }
  return swaps;
}

}  // namespace

Metric pearson(std::span<const double> x, std::span<const double> y) {
  require_pairs(x, y);
  if (x.size() < 3) {
    return Metric::undefined("insufficient_pairs");
  }
  const double mx = variability::mean(x);
  const double my = variability::mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    return Metric::undefined("constant_series");
  }
  return Metric::of(std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0));
}

KendallCounts kendall_counts(std::span<const double> x, std::span<const double> y) {
  require_pairs(x, y);
  const std::size_t n = x.size();
  KendallCounts c;
  c.pairs = tied_pairs(static_cast<std::int64_t>(n));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
  });

  std::int64_t tied_xy = 0;
  std::int64_t run_x = 1, run_xy = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    const bool same_x = k < n && x[order[k]] == x[order[k - 1]];
    const bool same_xy = same_x && y[order[k]] == y[order[k - 1]];
    if (same_x) {
      ++run_x;
    } else {
      c.tied_x += tied_pairs(run_x);
      run_x = 1;
    }
    if (same_xy) {
      ++run_xy;
    } else {
      tied_xy += tied_pairs(run_xy);
      run_xy = 1;
    }
  }

  std::vector<double> ys(n), scratch;
  for (std::size_t k = 0; k < n; ++k) {
    ys[k] = y[order[k]];
  }
  const std::int64_t discordant = count_inversions(ys, scratch);

  std::int64_t run_y = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k < n && ys[k] == ys[k - 1]) {
      ++run_y;
    } else {
      c.tied_y += tied_pairs(run_y);
      run_y = 1;
    }
  }
  // Pairs that are neither tied in x nor in y split into concordant and discordant.
  const std::int64_t untied = c.pairs - c.tied_x - c.tied_y + tied_xy;
  c.score = untied - 2 * discordant;
  return c;
}

Metric tau_b(const KendallCounts& counts) {
  const auto dx = static_cast<double>(counts.pairs - counts.tied_x);
  const auto dy = static_cast<double>(counts.pairs - counts.tied_y);
  if (dx <= 0.0 || dy <= 0.0) {
    return Metric::undefined("all_tied");
  }
  return Metric::of(std::clamp(static_cast<double>(counts.score) / std::sqrt(dx * dy), -1.0, 1.0));
}

Metric kendall_tau(std::span<const double> x, std::span<const double> y) {
  require_pairs(x, y);
  if (x.size() < 3) {
    return Metric::undefined("insufficient_pairs");
  }
  return tau_b(kendall_counts(x, y));
}

Metric r_cmed(std::span<const double> x, std::span<const double> y) {
  require_pairs(x, y);
  if (x.size() < 3) {
    return Metric::undefined("insufficient_pairs");
  }
  const auto sx = variability::median_and_mad(x);
  const auto sy = variability::median_and_mad(y);
  if (sx.mad == 0.0 || sy.mad == 0.0) {
    return Metric::undefined("zero_mad");
  }
  std::vector<double> abs_u(x.size()), abs_v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = (x[i] - sx.median) / sx.mad;
    const double b = (y[i] - sy.median) / sy.mad;
    abs_u[i] = std::abs(a + b);
    abs_v[i] = std::abs(a - b);
  }
  const double mu = variability::median(abs_u);
  const double mv = variability::median(abs_v);
  const double u2 = mu * mu;
  const double v2 = mv * mv;
  if (u2 + v2 == 0.0) {
    return Metric::undefined("zero_spread");
  }
  return Metric::of((u2 - v2) / (u2 + v2));
}

std::string_view to_string(Estimator e) noexcept {
  switch (e) {
    case Estimator::Pearson:
      return "pearson";
    case Estimator::Cmed:
      return "cmed";
    case Estimator::Kendall:
      return "kendall";
  }
  return "unknown";
}

const Metric& CorrelationTriple::get(Estimator e) const noexcept {
  switch (e) {
    case Estimator::Pearson:
      return pearson;
    case Estimator::Cmed:
      return cmed;
    case Estimator::Kendall:
      break;
  }
  return kendall;
}

CorrelationTriple correlate(std::span<const double> x, std::span<const double> y, const series::ScaleKey& scale) {
  require_pairs(x, y);
  CorrelationTriple t;
  t.scale = scale;
  t.n = x.size();
  t.pearson = pearson(x, y);
  t.kendall = kendall_tau(x, y);
  t.cmed = r_cmed(x, y);
  return t;
}

std::vector<CorrelationTriple> correlate_at_scale(std::span<const double> x, std::span<const double> y,
                                                  const series::TimeAxis& axis, series::TimeScale scale) {
  if (x.size() != axis.size() || y.size() != axis.size()) {
    throw DomainError("series length does not match time axis");
  }
  std::vector<series::ScaleKey> keys;
  if (scale == series::TimeScale::Seasonal) {
    for (auto s : series::kSeasons) {
      keys.push_back({scale, s});
    }
  } else {
    keys.push_back({scale, std::nullopt});
  }
  std::vector<CorrelationTriple> out;
  for (const auto& key : keys) {
    try {
      const auto xs = series::values_at(x, axis, key);
      const auto ys = series::values_at(y, axis, key);
      out.push_back(correlate(xs, ys, key));
    } catch (const InsufficientSpan&) {
      CorrelationTriple t;
      t.scale = key;
      t.pearson = t.kendall = t.cmed = Metric::undefined("insufficient_span");
      out.push_back(std::move(t));
    }
  }
  return out;
}

AgreementTable agreement_table(std::span<const CorrelationTriple> grid, double tolerance) {
  AgreementTable table;
  table.total = grid.size();
  table.tolerance = tolerance;
  static constexpr std::array<std::pair<Estimator, Estimator>, 3> kPairs{
      {{Estimator::Pearson, Estimator::Cmed}, {Estimator::Pearson, Estimator::Kendall},
       {Estimator::Cmed, Estimator::Kendall}}};
  for (std::size_t p = 0; p < kPairs.size(); ++p) {
    table.pairs[p].first = kPairs[p].first;
    table.pairs[p].second = kPairs[p].second;
  }
  for (const auto& cell : grid) {
    for (auto e : kEstimators) {
      const Metric& m = cell.get(e);
      auto& tally = table.single[static_cast<std::size_t>(e)];
      if (!m) {
        ++tally.undefined;
      } else if (m.value() > 0.0) {
        ++tally.positive;
      } else if (m.value() < 0.0) {
        ++tally.negative;
      } else {
        ++tally.zero;
      }
    }
    for (auto& pair : table.pairs) {
      const Metric& a = cell.get(pair.first);
      const Metric& b = cell.get(pair.second);
      if (!a || !b) {
        ++pair.excluded;
        continue;
      }
      if (a.value() > 0.0 && b.value() > 0.0) {
        ++pair.both_positive;
      } else if (a.value() < 0.0 && b.value() < 0.0) {
        ++pair.both_negative;
      }
      if (std::abs(a.value() - b.value()) <= tolerance) {
        ++pair.within_tolerance;
      }
    }
  }
  return table;
}

}  // namespace synergy::association
