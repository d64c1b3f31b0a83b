#include "raysplit/trace.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "raysplit/errors.hpp"
#include "raysplit/parallel.hpp"

namespace raysplit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPoleDistance = 1e-6;

void check_grid(std::span<const double> k_grid) {
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    if (!(k_grid[i] > 0.0)) throw ValidationError("k_grid", "points must be positive");
    if (i > 0 && !(k_grid[i] > k_grid[i - 1])) {
      throw ValidationError("k_grid", "must be strictly increasing");
    }
  }
}

std::vector<double> amplitudes_of(std::span<const OrbitRecord> orbits, const ScaledStepPotential& pot) {
  std::vector<double> out;
  out.reserve(orbits.size());
  for (const auto& rec : orbits) {
    if (!rec.code.is_primitive()) {
      throw ValidationError("orbits", "expected primitive orbits, got " + rec.code.word());
    }
    out.push_back(amplitude(rec, pot));
  }
  return out;
}

std::string describe(std::span<const OrbitRecord> orbits) {
  std::size_t longest = 0;
  for (const auto& rec : orbits) longest = std::max(longest, rec.code.length());
  return std::to_string(orbits.size()) + " orbits, length <= " + std::to_string(longest);
}

// Fills profile.values[i] = mean + (1/pi) sum_p T_p * oscillating(p, z_p) with
// z_p = A_p exp(i S0_p (k + i eta)).
DensityProfile evaluate_density(const ScaledStepPotential& pot, std::span<const OrbitRecord> orbits,
                                std::span<const double> k_grid, const DensityOptions& options,
                                const std::function<double(std::size_t, Complex)>& oscillating) {
  check_grid(k_grid);
  if (options.eta < 0.0) throw ValidationError("eta", "must be non-negative");
  const auto amps = amplitudes_of(orbits, pot);

  DensityProfile profile;
  profile.k_grid.assign(k_grid.begin(), k_grid.end());
  profile.values.resize(k_grid.size());
  profile.truncation = describe(orbits);
  profile.nu_max = options.nu_max;
  profile.eta = options.eta;
  profile.domain = options.domain;

  parallel_for(k_grid.size(), options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double k = k_grid[i];
      double sum = 0.0;
      for (std::size_t p = 0; p < orbits.size(); ++p) {
        const double s0 = orbits[p].reduced_action;
        const Complex z = amps[p] * std::exp(Complex(-s0 * options.eta, s0 * k));
        sum += orbits[p].period(k) * oscillating(p, z);
      }
      double value = mean_density(pot, k) + sum / kPi;
      if (options.domain == DensityDomain::kWavenumber) value *= 2.0 * k;
      profile.values[i] = value;
    }
  });
  return profile;
}

}  // namespace

double mean_density(const ScaledStepPotential& pot, double k) { return pot.omega1() / (2.0 * kPi * k); }

DensityProfile rho_trace(const ScaledStepPotential& pot, std::span<const OrbitRecord> orbits,
                         std::span<const double> k_grid, const DensityOptions& options) {
  if (options.nu_max < 1) throw ValidationError("nu_max", "must be >= 1");
  const int nu_max = options.nu_max;
  return evaluate_density(pot, orbits, k_grid, options, [nu_max](std::size_t, Complex z) {
    Complex power = z;
    double sum = 0.0;
    for (int nu = 1; nu <= nu_max; ++nu) {
      sum += power.real();
      power *= z;
    }
    return sum;
  });
}

DensityProfile rho_resummed(const ScaledStepPotential& pot, std::span<const OrbitRecord> orbits,
                            std::span<const double> k_grid, const DensityOptions& options) {
  // Pole checks run before the (possibly threaded) evaluation so errors propagate.
  const auto amps = amplitudes_of(orbits, pot);
  for (double k : k_grid) {
    for (std::size_t p = 0; p < orbits.size(); ++p) {
      const double s0 = orbits[p].reduced_action;
      const Complex z = amps[p] * std::exp(Complex(-s0 * options.eta, s0 * k));
      if (std::abs(1.0 - z) < kPoleDistance) throw PoleProximityError(k, orbits[p].code.word());
    }
  }
  auto profile = evaluate_density(pot, orbits, k_grid, options,
                                  [](std::size_t, Complex z) { return (z / (1.0 - z)).real(); });
  profile.nu_max = 0;
  return profile;
}

std::vector<double> newtonian_prediction(const ScaledStepPotential& pot, int m_max) {
  if (m_max < 1) throw ValidationError("m_max", "must be >= 1");
  const double action = 2.0 * pot.omega1();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m_max));
  for (int m = 1; m <= m_max; ++m) out.push_back(2.0 * kPi * m / action);
  return out;
}

std::vector<double> local_maxima(std::span<const double> grid, std::span<const double> values) {
  if (grid.size() != values.size()) throw ValidationError("values", "size must match the grid");
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    const double left = values[i - 1];
    const double mid = values[i];
    const double right = values[i + 1];
    if (!(mid > left && mid >= right)) continue;
    // Vertex of the parabola through the three samples (uniform spacing assumed locally).
    const double curvature = left - 2.0 * mid + right;
    double offset = 0.0;
    if (curvature < 0.0) offset = 0.5 * (left - right) / curvature;
    const double h = offset < 0.0 ? grid[i] - grid[i - 1] : grid[i + 1] - grid[i];
    out.push_back(grid[i] + offset * h);
  }
  return out;
}

Complex zeta(const ScaledStepPotential& pot, std::span<const OrbitRecord> orbits, Complex k) {
  const auto amps = amplitudes_of(orbits, pot);
  Complex product = 1.0;
  for (std::size_t p = 0; p < orbits.size(); ++p) {
    product *= 1.0 - amps[p] * std::exp(Complex(0.0, orbits[p].reduced_action) * k);
  }
  return product;
}

Complex zeta_cycle_expanded(const ScaledStepPotential& pot, std::span<const OrbitRecord> orbits,
                            Complex k, int max_length) {
  if (max_length < 1) throw ValidationError("max_length", "must be >= 1");
  const auto amps = amplitudes_of(orbits, pot);
  // Coefficients of the product as a polynomial in a variable counting code length.
  std::vector<Complex> graded(static_cast<std::size_t>(max_length) + 1, 0.0);
  graded[0] = 1.0;
  for (std::size_t p = 0; p < orbits.size(); ++p) {
    const auto len = orbits[p].code.length();
    if (len > static_cast<std::size_t>(max_length)) continue;
    const Complex z = amps[p] * std::exp(Complex(0.0, orbits[p].reduced_action) * k);
    for (std::size_t d = graded.size() - 1; d >= len; --d) {
      graded[d] -= z * graded[d - len];
      if (d == len) break;
    }
  }
  Complex sum = 0.0;
  for (const auto& c : graded) sum += c;
  return sum;
}

Complex PseudoOrbitTerm::value(Complex k) const {
  return coefficient * std::exp(Complex(0.0, action) * k);
}

std::size_t CycleExpansion::term_count() const noexcept {
  std::size_t n = 0;
  for (const auto& [power, terms] : groups_) n += terms.size();
  return n;
}

Complex CycleExpansion::evaluate(Complex k) const {
  Complex sum = 0.0;
  for (const auto& [power, terms] : groups_) {
    for (const auto& term : terms) sum += term.value(k);
  }
  return sum;
}

double CycleExpansion::tail_bound(Complex k) const {
  double all = 1.0;
  for (std::size_t p = 0; p < orbits_.size(); ++p) {
    all *= 1.0 + std::abs(amplitudes_[p] * std::exp(Complex(0.0, orbits_[p].reduced_action) * k));
  }
  double kept = 0.0;
  for (const auto& [power, terms] : groups_) {
    for (const auto& term : terms) kept += std::abs(term.value(k));
  }
  return std::max(0.0, all - kept);
}

std::string CycleExpansion::label(const PseudoOrbitTerm& term) const {
  if (term.orbits.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < term.orbits.size(); ++i) {
    if (i > 0) out += '*';
    out += orbits_[term.orbits[i]].code.word();
  }
  return out;
}

CycleExpansion cycle_expansion(const ScaledStepPotential& pot, std::span<const OrbitRecord> orbits,
                               ExpansionVariable variable, int max_power, double s_max,
                               std::size_t term_cap) {
  if (max_power < 0) throw ValidationError("max_power", "must be non-negative");
  CycleExpansion out;
  out.variable_ = variable;
  out.orbits_.assign(orbits.begin(), orbits.end());
  out.amplitudes_ = amplitudes_of(orbits, pot);

  auto power_of = [variable](const OrbitRecord& rec) {
    return variable == ExpansionVariable::kR ? rec.sigma : rec.tau2;
  };

  std::size_t count = 0;
  PseudoOrbitTerm current;
  std::function<void(std::size_t)> expand = [&](std::size_t next) {
    if (next == out.orbits_.size()) {
      if (++count > term_cap) {
        throw ExpansionLimitError("cycle expansion exceeds " + std::to_string(term_cap) + " terms");
      }
      const int power = variable == ExpansionVariable::kR ? current.r_power : current.t_power;
      out.groups_[power].push_back(current);
      return;
    }
    expand(next + 1);
    const auto& rec = out.orbits_[next];
    const int power = (variable == ExpansionVariable::kR ? current.r_power : current.t_power) + power_of(rec);
    if (power > max_power || current.action + rec.reduced_action > s_max) return;
    const PseudoOrbitTerm saved = current;
    current.orbits.push_back(next);
    current.coefficient *= -out.amplitudes_[next];
    current.action += rec.reduced_action;
    current.r_power += rec.sigma;
    current.t_power += rec.tau2;
    current.length += static_cast<int>(rec.code.length());
    expand(next + 1);
    current = saved;
  };
  expand(0);
  return out;
}

}  // namespace raysplit
