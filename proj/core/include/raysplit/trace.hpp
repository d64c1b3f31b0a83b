#pragma once

// Level density of the step potential rebuilt from periodic orbits, the
// repetition-resummed density, and the spectral zeta function with its cycle
// expansion.
//
// Densities use the energy measure rho(E) dE evaluated at E = k^2, so an
// orbit's period is T_p = S0_p / (2k) and the smooth part is omega1 / (2 pi k).
// DensityDomain::kWavenumber multiplies by dE/dk = 2k.

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "raysplit/model.hpp"
#include "raysplit/orbits.hpp"

namespace raysplit {

using Complex = std::complex<double>;

enum class DensityDomain { kEnergy, kWavenumber };

struct DensityOptions {
  int nu_max = 10;
  /// Evaluate the oscillating terms at k + i eta.
  double eta = 0.0;
  DensityDomain domain = DensityDomain::kEnergy;
  unsigned threads = 1;
};

struct DensityProfile {
  std::vector<double> k_grid;
  std::vector<double> values;
  /// e.g. "41 orbits, length <= 7".
  std::string truncation;
  int nu_max = 0;
  double eta = 0.0;
  DensityDomain domain = DensityDomain::kEnergy;
};

double mean_density(const ScaledStepPotential& pot, double k);

DensityProfile rho_trace(const ScaledStepPotential& pot, std::span<const OrbitRecord> orbits,
                         std::span<const double> k_grid, const DensityOptions& options = {});

/// Geometric series over repetitions summed in closed form. Grid points within
/// 1e-6 of a pole (|1 - A e^{iSk}| < 1e-6) raise PoleProximityError.
DensityProfile rho_resummed(const ScaledStepPotential& pot, std::span<const OrbitRecord> orbits,
                            std::span<const double> k_grid, const DensityOptions& options = {});

/// Spectrum predicted by the Newtonian orbit alone: k_m = 2 pi m / S0_N, S0_N = 2 omega1.
std::vector<double> newtonian_prediction(const ScaledStepPotential& pot, int m_max);

/// Sample positions of strict local maxima, refined by a parabola through the
/// neighbouring samples.
std::vector<double> local_maxima(std::span<const double> grid, std::span<const double> values);

/// Truncated Euler product prod_p (1 - A_p exp(i S0_p k)).
Complex zeta(const ScaledStepPotential& pot, std::span<const OrbitRecord> orbits, Complex k);

/// The same product expanded in pseudo-orbits and cut at total code length
/// max_length. Uses only orbits of length <= max_length.
Complex zeta_cycle_expanded(const ScaledStepPotential& pot, std::span<const OrbitRecord> orbits,
                            Complex k, int max_length);

enum class ExpansionVariable { kR, kT };

/// Product over a set of distinct primitive orbits, with the (-1) per factor.
struct PseudoOrbitTerm {
  std::vector<std::size_t> orbits;  // indices into the expanded orbit list
  double coefficient = 1.0;
  double action = 0.0;
  int r_power = 0;
  int t_power = 0;
  int length = 0;

  int sign() const { return coefficient < 0.0 ? -1 : 1; }
  Complex value(Complex k) const;
};

class CycleExpansion {
 public:
  ExpansionVariable variable() const noexcept { return variable_; }
  /// Terms keyed by their power of the expansion variable.
  const std::map<int, std::vector<PseudoOrbitTerm>>& groups() const noexcept { return groups_; }
  std::size_t term_count() const noexcept;
  Complex evaluate(Complex k) const;
  /// Bound on |full truncated product - evaluate(k)|: prod_p (1 + |z_p|) minus
  /// the magnitudes of the retained terms.
  double tail_bound(Complex k) const;
  /// Human-readable label like "L*LR".
  std::string label(const PseudoOrbitTerm& term) const;

 private:
  friend CycleExpansion cycle_expansion(const ScaledStepPotential&, std::span<const OrbitRecord>,
                                        ExpansionVariable, int, double, std::size_t);
  ExpansionVariable variable_ = ExpansionVariable::kR;
  std::vector<OrbitRecord> orbits_;
  std::vector<double> amplitudes_;
  std::map<int, std::vector<PseudoOrbitTerm>> groups_;
};

/// Expands prod_p (1 - t_p) into pseudo-orbits, keeping those whose power of the
/// chosen variable is <= max_power and whose total reduced action is <= s_max.
/// Throws ExpansionLimitError past term_cap terms.
CycleExpansion cycle_expansion(const ScaledStepPotential& pot, std::span<const OrbitRecord> orbits,
                               ExpansionVariable variable, int max_power, double s_max,
                               std::size_t term_cap = 1'000'000);

}  // namespace raysplit
