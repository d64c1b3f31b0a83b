#include "raysplit/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "raysplit/errors.hpp"
#include "raysplit/graph.hpp"
#include "raysplit/parallel.hpp"

namespace raysplit {

double secular(const ScaledStepPotential& pot, double k) {
  return std::sin(k * pot.omega1()) - pot.r() * std::sin(k * pot.omega2());
}

double secular_derivative(const ScaledStepPotential& pot, double k) {
  return pot.omega1() * std::cos(k * pot.omega1()) -
         pot.r() * pot.omega2() * std::cos(k * pot.omega2());
}

double secular_matching_form(const ScaledStepPotential& pot, double k) {
  const double b = pot.b();
  const double kappa = pot.beta() * k;
  return std::cos(k * b) * std::sin(kappa * (1.0 - b)) +
         pot.beta() * std::sin(k * b) * std::cos(kappa * (1.0 - b));
}

double weyl_count(const ScaledStepPotential& pot, double k) { return pot.omega1() * k / std::numbers::pi; }

double weyl_count(const NStepPotential& pot, double k) {
  return pot.total_length() * k / std::numbers::pi;
}

double staircase_deviation(const std::vector<double>& roots, double slope, double k_max,
                           double* worst_k) {
  // N(k) - slope k / pi is piecewise linear and decreasing between roots, so
  // the extremes sit on either side of each jump and at the end points.
  double worst = 0.0;
  double where = 0.0;
  auto consider = [&](double value, double k) {
    if (std::abs(value) > worst) {
      worst = std::abs(value);
      where = k;
    }
  };
  for (std::size_t n = 0; n < roots.size(); ++n) {
    const double smooth = slope * roots[n] / std::numbers::pi;
    consider(static_cast<double>(n) - smooth, roots[n]);
    consider(static_cast<double>(n + 1) - smooth, roots[n]);
  }
  consider(static_cast<double>(roots.size()) - slope * k_max / std::numbers::pi, k_max);
  if (worst_k != nullptr) *worst_k = where;
  return worst;
}

namespace {

struct RealFunction {
  std::function<double(double)> value;
  // Empty when no closed-form derivative is available.
  std::function<double(double)> derivative;

  double slope_at(double k) const {
    if (derivative) return derivative(k);
    const double h = 1e-6 * std::max(1.0, std::abs(k));
    return (value(k + h) - value(k - h)) / (2.0 * h);
  }
};

double refine_root(const RealFunction& fn, double lo, double hi, double f_lo, double f_hi,
                   double tolerance) {
  while (hi - lo > tolerance) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = fn.value(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  const double mid = lo + 0.5 * (hi - lo);
  double polished = mid;
  if (fn.derivative) {
    const double d = fn.derivative(mid);
    if (d != 0.0) polished = mid - fn.value(mid) / d;
  } else if (f_hi != f_lo) {
    polished = lo - f_lo * (hi - lo) / (f_hi - f_lo);
  }
  return (polished >= lo && polished <= hi) ? polished : mid;
}

// Roots in (lo, hi] from a uniform scan with step at most h. Cells are processed
// independently so the result does not depend on the thread count.
std::vector<double> scan_interval(const RealFunction& fn, double lo, double hi, double h,
                                  const RootFindingOptions& options) {
  const auto cells = static_cast<std::size_t>(std::ceil((hi - lo) / h));
  if (cells == 0) return {};
  const double step = (hi - lo) / static_cast<double>(cells);
  auto grid = [&](std::size_t i) { return i == cells ? hi : lo + step * static_cast<double>(i); };

  const unsigned workers = std::max(1u, options.threads);
  std::vector<std::vector<double>> found(workers);
  const std::size_t chunk = (cells + workers - 1) / workers;
  parallel_for(workers, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t w = begin; w < end; ++w) {
      const std::size_t first = w * chunk;
      const std::size_t last = std::min(cells, first + chunk);
      if (first >= last) continue;
      double a = grid(first);
      // k = 0 always solves the secular equation and is never part of the spectrum.
      double f_a = (a == 0.0) ? 0.0 : fn.value(a);
      for (std::size_t i = first; i < last; ++i) {
        const double b = grid(i + 1);
        const double f_b = fn.value(b);
        if (f_b == 0.0) {
          found[w].push_back(b);
        } else if (f_a != 0.0 && ((f_a < 0.0) != (f_b < 0.0))) {
          found[w].push_back(refine_root(fn, a, b, f_a, f_b, options.tolerance));
        }
        a = b;
        f_a = f_b;
      }
    }
  });

  std::vector<double> roots;
  for (auto& part : found) roots.insert(roots.end(), part.begin(), part.end());
  return roots;
}

// First k at which |N(k) - slope k / pi| exceeds the tolerance, or a negative value.
double first_violation(const std::vector<double>& roots, double slope, double k_max,
                       double tolerance) {
  for (std::size_t n = 0; n < roots.size(); ++n) {
    const double smooth = slope * roots[n] / std::numbers::pi;
    if (std::abs(static_cast<double>(n) - smooth) > tolerance ||
        std::abs(static_cast<double>(n + 1) - smooth) > tolerance) {
      return roots[n];
    }
  }
  if (std::abs(static_cast<double>(roots.size()) - slope * k_max / std::numbers::pi) > tolerance) {
    return k_max;
  }
  return -1.0;
}

SpectrumResult solve(const RealFunction& fn, double slope, double k_max,
                     const RootFindingOptions& options) {
  if (!(k_max > 0.0) || !std::isfinite(k_max)) {
    throw ValidationError("k_max", "must be positive and finite");
  }
  if (!(options.oversampling >= 1.0)) throw ValidationError("oversampling", "must be >= 1");

  const double spacing = std::numbers::pi / slope;
  const double h = spacing / options.oversampling;

  SpectrumResult result;
  result.k_max = k_max;
  result.roots = scan_interval(fn, 0.0, k_max, h, options);

  auto& report = result.completeness;
  report.weyl_tolerance = options.weyl_tolerance;
  report.scan_step = h;

  for (int pass = 1;; ++pass) {
    const double bad = first_violation(result.roots, slope, k_max, options.weyl_tolerance);
    if (bad < 0.0) break;
    // A missed pair shows up within about one mean spacing of the violation.
    const double lo = std::max(0.0, bad - 3.0 * spacing);
    const double hi = std::min(k_max, bad + spacing);
    if (pass > options.max_refinements) {
      throw CompletenessError(lo, hi,
                              staircase_deviation(result.roots, slope, k_max, nullptr));
    }
    const double finer = h / std::ldexp(1.0, pass);
    auto window = scan_interval(fn, lo, hi, finer, options);
    auto first = std::upper_bound(result.roots.begin(), result.roots.end(), lo);
    auto last = std::upper_bound(result.roots.begin(), result.roots.end(), hi);
    first = result.roots.erase(first, last);
    result.roots.insert(first, window.begin(), window.end());
    report.refinements = pass;
  }

  report.max_deviation = staircase_deviation(result.roots, slope, k_max, &report.worst_k);
  for (double k : result.roots) {
    if (std::abs(fn.slope_at(k)) < options.degeneracy_threshold) report.near_degenerate.push_back(k);
  }
  return result;
}

RealFunction secular_function(const ScaledStepPotential& pot) {
  return {[pot](double k) { return secular(pot, k); },
          [pot](double k) { return secular_derivative(pot, k); }};
}

}  // namespace

SpectrumResult find_roots(const ScaledStepPotential& pot, double k_max,
                          const RootFindingOptions& options) {
  return solve(secular_function(pot), pot.omega1(), k_max, options);
}

SpectrumResult find_first_roots(const ScaledStepPotential& pot, std::size_t count,
                                const RootFindingOptions& options) {
  if (count == 0) throw ValidationError("count", "must be positive");
  const double spacing = std::numbers::pi / pot.omega1();
  double k_max = (static_cast<double>(count) + 2.0) * spacing;
  SpectrumResult result = find_roots(pot, k_max, options);
  while (result.roots.size() < count) {
    k_max += 4.0 * spacing;
    result = find_roots(pot, k_max, options);
  }
  result.roots.resize(count);
  result.k_max = result.roots.back();
  auto& report = result.completeness;
  report.max_deviation =
      staircase_deviation(result.roots, pot.omega1(), result.k_max, &report.worst_k);
  std::erase_if(report.near_degenerate, [&](double k) { return k > result.k_max; });
  return result;
}

SpectrumResult nstep_find_roots(const NStepPotential& pot, double k_max,
                                const RootFindingOptions& options) {
  const GraphScatteringModel model(pot);
  RealFunction fn{[model](double k) { return model.real_secular(k); }, {}};
  return solve(fn, pot.total_length(), k_max, options);
}

}  // namespace raysplit
