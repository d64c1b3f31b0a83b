#pragma once

// Exact spectrum of the scaled step potentials. Eigenvalues are E_n = k_n^2
// where k_n > 0 are the real roots of the secular function
//
//   f(k) = sin(omega1 k) - r sin(omega2 k).
//
// Roots are isolated by a uniform sign-change scan, bisected, polished with
// one Newton step, and then audited against the Weyl law N(k) ~ omega1 k / pi.

#include <cstddef>
#include <vector>

#include "raysplit/model.hpp"

namespace raysplit {

double secular(const ScaledStepPotential& pot, double k);
double secular_derivative(const ScaledStepPotential& pot, double k);

/// Matching-condition form cos(kb) sin[kappa(1-b)] + (kappa/k) sin(kb) cos[kappa(1-b)],
/// kappa = beta k. Equal to (1 + beta) f(k) / 2.
double secular_matching_form(const ScaledStepPotential& pot, double k);

/// Smooth part of the staircase, omega1 k / pi.
double weyl_count(const ScaledStepPotential& pot, double k);
double weyl_count(const NStepPotential& pot, double k);

struct RootFindingOptions {
  /// Scan step is pi / (oversampling * Weyl slope * pi), i.e. mean spacing / oversampling.
  double oversampling = 20.0;
  /// Target bracket width. Bisection stops earlier only when no double lies inside.
  double tolerance = 1e-12;
  /// Allowed sup |N(k) - weyl_count(k)|.
  double weyl_tolerance = 1.5;
  int max_refinements = 4;
  /// Roots with |f'(k)| below this are reported as near-degenerate.
  double degeneracy_threshold = 1e-8;
  unsigned threads = 1;
};

struct CompletenessReport {
  double weyl_tolerance = 0.0;
  double max_deviation = 0.0;
  /// Where the deviation is attained.
  double worst_k = 0.0;
  double scan_step = 0.0;
  int refinements = 0;
  std::vector<double> near_degenerate;
};

struct SpectrumResult {
  std::vector<double> roots;
  double k_max = 0.0;
  CompletenessReport completeness;
};

/// All roots in (0, k_max]. Throws CompletenessError if the staircase cannot
/// be brought within the Weyl tolerance.
SpectrumResult find_roots(const ScaledStepPotential& pot, double k_max,
                          const RootFindingOptions& options = {});

/// The first `count` roots.
SpectrumResult find_first_roots(const ScaledStepPotential& pot, std::size_t count,
                                const RootFindingOptions& options = {});

/// Roots of det(1 - S(k)) for the chain graph of an N-step potential.
SpectrumResult nstep_find_roots(const NStepPotential& pot, double k_max,
                                const RootFindingOptions& options = {});

/// Largest |N(k) - slope k / pi| over [0, k_max] for a sorted root list.
double staircase_deviation(const std::vector<double>& roots, double slope, double k_max,
                           double* worst_k = nullptr);

}  // namespace raysplit
