#pragma once

// Scaled ray-splitting step potentials.
//
// Units: hbar = 1, particle mass 1/2, well [0, 1], E = k^2. The potential in
// region i is lambda_i * E, so every action is linear in k and the physics is
// fixed by the weighted bond lengths l_i = beta_i * (width of region i) with
// beta_i = sqrt(1 - lambda_i).

#include <cstddef>
#include <span>
#include <vector>

namespace raysplit {

/// Single step at x = b: V = 0 on (0, b], V = lambda * E on (b, 1).
class ScaledStepPotential {
 public:
  /// Throws ValidationError unless 0 < b < 1 and 0 <= lambda < 1.
  ScaledStepPotential(double b, double lambda);

  double b() const noexcept { return b_; }
  double lambda() const noexcept { return lambda_; }
  double beta() const noexcept { return beta_; }
  double l1() const noexcept { return l1_; }
  double l2() const noexcept { return l2_; }
  double omega1() const noexcept { return omega1_; }
  double omega2() const noexcept { return omega2_; }
  /// Reflection coefficient seen from the free (left) side, in [0, 1).
  double r() const noexcept { return r_; }
  double t() const noexcept { return t_; }

 private:
  double b_;
  double lambda_;
  double beta_;
  double l1_;
  double l2_;
  double omega1_;
  double omega2_;
  double r_;
  double t_;
};

ScaledStepPotential build_potential(double b, double lambda);

/// Step position for which both weighted bond lengths equal b; there the
/// spectrum collapses onto the comb k_n = n pi / (2b).
double equal_length_step_position(double lambda);

struct InterfaceCoefficients {
  double r;
  double t;
};

/// Scattering at the junction of two regions, seen from the left one.
/// r flips sign when the sides are swapped; t is symmetric.
InterfaceCoefficients interface_coefficients(double beta_left, double beta_right);

/// Piecewise-constant scaled potential with N regions on [0, 1].
class NStepPotential {
 public:
  NStepPotential(std::vector<double> breakpoints, std::vector<double> lambdas);

  std::size_t regions() const noexcept { return lambdas_.size(); }
  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  std::span<const double> lambdas() const noexcept { return lambdas_; }
  std::span<const double> betas() const noexcept { return betas_; }
  std::span<const double> lengths() const noexcept { return lengths_; }
  /// Sum of weighted lengths; the Weyl slope is total_length() / pi.
  double total_length() const noexcept { return total_length_; }

 private:
  std::vector<double> breakpoints_;
  std::vector<double> lambdas_;
  std::vector<double> betas_;
  std::vector<double> lengths_;
  double total_length_ = 0.0;
};

NStepPotential build_nstep(std::vector<double> breakpoints, std::vector<double> lambdas);

/// The two-region chain equivalent to a single step.
NStepPotential to_nstep(const ScaledStepPotential& pot);

}  // namespace raysplit
