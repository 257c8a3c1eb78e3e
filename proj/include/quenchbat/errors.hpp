#pragma once

#include <stdexcept>
#include <string>

namespace quenchbat {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A model evaluator produced a non-finite component.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, double momentum)
      : Error(what), momentum_(momentum) {}
  double momentum() const { return momentum_; }

 private:
  double momentum_;
};

// Precondition violation on an operation (bad grid, invalid parameters, ...).
class SpecError : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature failed to reach the requested tolerance.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double requested, double achieved)
      : Error(what), requested_(requested), achieved_(achieved) {}
  double requested_tolerance() const { return requested_; }
  double achieved_tolerance() const { return achieved_; }

 private:
  double requested_;
  double achieved_;
};

// Run-configuration problem; carries the offending field name.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : Error("config field '" + field + "': " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace quenchbat
