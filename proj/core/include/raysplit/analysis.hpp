#pragma once

// Orbit spectroscopy: F(s) = sum_j exp(-i s k_j) over computed roots peaks at
// the reduced actions nu * S0_p of the periodic orbits.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "raysplit/orbits.hpp"

namespace raysplit {

struct FourierProfile {
  std::vector<double> s_grid;
  std::vector<double> magnitude;
  std::size_t j_roots = 0;
  double k_max = 0.0;
};

/// Uniform grid lower, lower + step, ... up to and including upper (within step/2).
std::vector<double> uniform_grid(double lower, double upper, double step);

/// Default grid spacing pi / (4 k_max).
double default_s_step(double k_max);

/// Default matching tolerance 4 pi / k_max (two Fourier resolution widths).
double default_match_tolerance(double k_max);

FourierProfile fourier_transform(std::span<const double> roots, std::span<const double> s_grid,
                                 unsigned threads = 1);

/// Half-width of the region around a main lobe in which truncation sidelobes of
/// the J-term sum can exceed threshold_fraction * J: sidelobe m of the
/// Dirichlet kernel sits near (m + 1/2) 2 pi / k_max with height ~ 1 / (pi (m + 1/2)).
double sidelobe_window(double k_max, double threshold_fraction);

/// Local maxima of |F| above threshold_fraction * J, refined by parabolic
/// interpolation. With dominance_window > 0, a maximum is kept only if no
/// sample within that distance is larger, which removes truncation sidelobes.
std::vector<double> detect_peaks(const FourierProfile& profile, double threshold_fraction,
                                 double dominance_window = 0.0);

struct PeakMatch {
  double peak = 0.0;
  /// Index into the action spectrum, if within tolerance.
  std::optional<std::size_t> line;
  double residual = 0.0;
};

struct MatchReport {
  std::vector<PeakMatch> matches;
  double tolerance = 0.0;
  double matched_fraction = 1.0;
  double worst_residual = 0.0;
  std::size_t unmatched = 0;
  /// Matched peaks whose action line has no Newtonian contribution.
  std::size_t non_newtonian_only = 0;
};

MatchReport match_peaks(std::span<const double> peaks, std::span<const ActionLine> actions,
                        double tolerance);

/// Full width at half maximum of the peak of |F| nearest to `center`.
double peak_fwhm(const FourierProfile& profile, double center);

}  // namespace raysplit
