#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace synergy {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invalid input data (files, manifests, configs).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A function was called outside its domain (negative speed, empty sample, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The series does not contain enough complete calendar periods.
class InsufficientSpan : public Error {
 public:
  using Error::Error;
};

/**
 * @brief A scalar statistic that is either a finite value or explicitly undefined.
 *
 * Undefined results (zero median, constant series, singular covariance, ...)
 * carry a short machine-readable reason instead of a NaN.
 */
class Metric {
 public:
  static Metric of(double value);
  static Metric undefined(std::string reason);

  [[nodiscard]] bool defined() const noexcept { return value_.has_value(); }
  explicit operator bool() const noexcept { return defined(); }

  /// Throws DomainError when undefined.
  [[nodiscard]] double value() const;
  [[nodiscard]] double value_or(double fallback) const noexcept { return value_.value_or(fallback); }
  /// Empty when defined.
  [[nodiscard]] const std::string& reason() const noexcept { return reason_; }

 private:
  Metric() = default;

  std::optional<double> value_;
  std::string reason_;
};

}  // namespace synergy
