#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace raysplit {

// Raised when an input violates an operation's precondition. `parameter()`
// names the offending argument so front ends can report it verbatim.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string parameter, const std::string& message)
      : std::invalid_argument(parameter + ": " + message), parameter_(std::move(parameter)) {}

  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string parameter_;
};

// The root finder could not reconcile its root count with the Weyl law on
// [lower, upper] after the maximum number of refinements.
class CompletenessError : public std::runtime_error {
 public:
  CompletenessError(double lower, double upper, double deviation)
      : std::runtime_error("spectrum incomplete on [" + std::to_string(lower) + ", " +
                           std::to_string(upper) + "], staircase deviation " +
                           std::to_string(deviation)),
        lower_(lower),
        upper_(upper),
        deviation_(deviation) {}

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  double deviation() const noexcept { return deviation_; }

 private:
  double lower_;
  double upper_;
  double deviation_;
};

// A resummed density was requested too close to a pole of the geometric series.
class PoleProximityError : public std::domain_error {
 public:
  PoleProximityError(double k, std::string orbit)
      : std::domain_error("grid point k=" + std::to_string(k) + " lies on a pole of orbit " + orbit),
        k_(k) {}

  double k() const noexcept { return k_; }

 private:
  double k_;
};

// Combinatorial enumeration exceeded its configured term budget.
class ExpansionLimitError : public std::length_error {
 public:
  explicit ExpansionLimitError(const std::string& what) : std::length_error(what) {}
};

}  // namespace raysplit
