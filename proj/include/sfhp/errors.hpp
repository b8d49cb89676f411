#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sfhp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a special function (e.g. Gamma at x <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Result would overflow double precision.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// An evaluated alpha profile left (0, 1].
class RangeError : public Error {
 public:
  RangeError(const std::string& what, double z, double value)
      : Error(what), z_(z), value_(value) {}
  double z() const noexcept { return z_; }
  double value() const noexcept { return value_; }

 private:
  double z_;
  double value_;
};

/// Fractional kernel evaluated inside the guard ball around the observer time.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double s, double t_obs)
      : Error(what), s_(s), t_obs_(t_obs) {}
  double s() const noexcept { return s_; }
  double t_obs() const noexcept { return t_obs_; }

 private:
  double s_;
  double t_obs_;
};

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double estimate)
      : Error(what), estimate_(estimate) {}
  double error_estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

/// Legendre map could not be inverted (degenerate velocity Hessian).
class HyperregularityError : public Error {
 public:
  using Error::Error;
};

class SingularMetricError : public Error {
 public:
  using Error::Error;
};

class NonFiniteStateError : public Error {
 public:
  NonFiniteStateError(const std::string& what, std::size_t step)
      : Error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

class GridMismatchError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration; the message names the offending field.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& why)
      : Error(field + ": " + why), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace sfhp
