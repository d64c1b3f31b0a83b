#include "raysplit/model.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "raysplit/errors.hpp"

namespace raysplit {

namespace {

void check_lambda(double lambda, const std::string& name) {
  if (!std::isfinite(lambda) || lambda < 0.0 || lambda >= 1.0) {
    throw ValidationError(name, "must lie in [0, 1), got " + std::to_string(lambda));
  }
}

}  // namespace

ScaledStepPotential::ScaledStepPotential(double b, double lambda) : b_(b), lambda_(lambda) {
  if (!std::isfinite(b) || b <= 0.0 || b >= 1.0) {
    throw ValidationError("b", "must lie in (0, 1), got " + std::to_string(b));
  }
  check_lambda(lambda, "lambda");

  beta_ = std::sqrt(1.0 - lambda_);
  l1_ = b_;
  l2_ = beta_ * (1.0 - b_);
  omega1_ = l1_ + l2_;
  omega2_ = l1_ - l2_;
  r_ = (1.0 - beta_) / (1.0 + beta_);
  t_ = std::sqrt(1.0 - r_ * r_);
}

ScaledStepPotential build_potential(double b, double lambda) { return {b, lambda}; }

double equal_length_step_position(double lambda) {
  check_lambda(lambda, "lambda");
  const double beta = std::sqrt(1.0 - lambda);
  return beta / (1.0 + beta);
}

InterfaceCoefficients interface_coefficients(double beta_left, double beta_right) {
  if (!(beta_left > 0.0) || !std::isfinite(beta_left)) {
    throw ValidationError("beta_left", "must be positive");
  }
  if (!(beta_right > 0.0) || !std::isfinite(beta_right)) {
    throw ValidationError("beta_right", "must be positive");
  }
  const double r = (beta_left - beta_right) / (beta_left + beta_right);
  return {r, std::sqrt(1.0 - r * r)};
}

NStepPotential::NStepPotential(std::vector<double> breakpoints, std::vector<double> lambdas)
    : breakpoints_(std::move(breakpoints)), lambdas_(std::move(lambdas)) {
  if (lambdas_.empty()) {
    throw ValidationError("lambdas", "at least one region is required");
  }
  if (breakpoints_.size() != lambdas_.size() + 1) {
    throw ValidationError("breakpoints", "expected " + std::to_string(lambdas_.size() + 1) +
                                             " values, got " + std::to_string(breakpoints_.size()));
  }
  if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0) {
    throw ValidationError("breakpoints", "must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] > breakpoints_[i - 1])) {
      throw ValidationError("breakpoints", "must be strictly increasing (index " +
                                               std::to_string(i) + ")");
    }
  }
  betas_.reserve(lambdas_.size());
  lengths_.reserve(lambdas_.size());
  for (std::size_t i = 0; i < lambdas_.size(); ++i) {
    check_lambda(lambdas_[i], "lambdas[" + std::to_string(i) + "]");
    const double beta = std::sqrt(1.0 - lambdas_[i]);
    betas_.push_back(beta);
    lengths_.push_back(beta * (breakpoints_[i + 1] - breakpoints_[i]));
    total_length_ += lengths_.back();
  }
}

NStepPotential build_nstep(std::vector<double> breakpoints, std::vector<double> lambdas) {
  return {std::move(breakpoints), std::move(lambdas)};
}

NStepPotential to_nstep(const ScaledStepPotential& pot) {
  return {{0.0, pot.b(), 1.0}, {0.0, pot.lambda()}};
}

}  // namespace raysplit
