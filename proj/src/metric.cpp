#include "synergy/metric.hpp"

#include <cmath>

namespace synergy {

Metric Metric::of(double value) {
  if (!std::isfinite(value)) {
    return undefined("non_finite");
  }
  Metric m;
  m.value_ = value;
  return m;
}

Metric Metric::undefined(std::string reason) {
  Metric m;
  m.reason_ = reason.empty() ? std::string("undefined") : std::move(reason);
  return m;
}

double Metric::value() const {
  if (!value_) {
    throw DomainError("metric is undefined: " + reason_);
  }
  return *value_;
}

}  // namespace synergy
