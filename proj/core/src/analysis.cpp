#include "raysplit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "raysplit/errors.hpp"
#include "raysplit/parallel.hpp"

namespace raysplit {

namespace {

constexpr double kPi = std::numbers::pi;
// Phasors are re-seeded from exact exponentials at multiples of this index.
constexpr std::size_t kReseedBlock = 1024;

double grid_step(std::span<const double> grid) {
  return (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
}

bool is_uniform(std::span<const double> grid) {
  if (grid.size() < 3) return false;
  const double step = grid_step(grid);
  const double slack = 1e-12 * std::max({std::abs(grid.front()), std::abs(grid.back()), step});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (std::abs(grid[i] - (grid[0] + step * static_cast<double>(i))) > slack) return false;
  }
  return true;
}

}  // namespace

std::vector<double> uniform_grid(double lower, double upper, double step) {
  if (!(step > 0.0)) throw ValidationError("step", "must be positive");
  if (!(upper >= lower)) throw ValidationError("upper", "must not be below lower");
  const auto n = static_cast<std::size_t>(std::floor((upper - lower) / step + 0.5));
  std::vector<double> grid(n + 1);
  for (std::size_t i = 0; i <= n; ++i) grid[i] = lower + step * static_cast<double>(i);
  return grid;
}

double default_s_step(double k_max) { return kPi / (4.0 * k_max); }

double default_match_tolerance(double k_max) { return 4.0 * kPi / k_max; }

FourierProfile fourier_transform(std::span<const double> roots, std::span<const double> s_grid,
                                 unsigned threads) {
  if (roots.empty()) throw ValidationError("roots", "must not be empty");
  FourierProfile profile;
  profile.s_grid.assign(s_grid.begin(), s_grid.end());
  profile.magnitude.assign(s_grid.size(), 0.0);
  profile.j_roots = roots.size();
  profile.k_max = roots.back();

  const bool uniform = is_uniform(s_grid);
  const double step = uniform ? grid_step(s_grid) : 0.0;
  const std::size_t blocks = (s_grid.size() + kReseedBlock - 1) / kReseedBlock;

  const std::size_t count = roots.size();
  parallel_for(blocks, threads, [&](std::size_t first_block, std::size_t last_block) {
    // Split real and imaginary parts; std::complex multiplication would go
    // through the NaN-safe library routine.
    std::vector<double> pr(count), pi(count), rr(count), ri(count);
    if (uniform) {
      for (std::size_t j = 0; j < count; ++j) {
        rr[j] = std::cos(step * roots[j]);
        ri[j] = -std::sin(step * roots[j]);
      }
    }
    for (std::size_t block = first_block; block < last_block; ++block) {
      const std::size_t begin = block * kReseedBlock;
      const std::size_t end = std::min(s_grid.size(), begin + kReseedBlock);
      if (uniform) {
        for (std::size_t j = 0; j < count; ++j) {
          pr[j] = std::cos(s_grid[begin] * roots[j]);
          pi[j] = -std::sin(s_grid[begin] * roots[j]);
        }
      }
      for (std::size_t i = begin; i < end; ++i) {
        double re[4] = {0.0, 0.0, 0.0, 0.0};
        double im[4] = {0.0, 0.0, 0.0, 0.0};
        if (uniform) {
          std::size_t j = 0;
          for (; j + 4 <= count; j += 4) {
            for (std::size_t u = 0; u < 4; ++u) {
              const double a = pr[j + u];
              const double b = pi[j + u];
              re[u] += a;
              im[u] += b;
              pr[j + u] = a * rr[j + u] - b * ri[j + u];
              pi[j + u] = a * ri[j + u] + b * rr[j + u];
            }
          }
          for (; j < count; ++j) {
            const double a = pr[j];
            const double b = pi[j];
            re[0] += a;
            im[0] += b;
            pr[j] = a * rr[j] - b * ri[j];
            pi[j] = a * ri[j] + b * rr[j];
          }
        } else {
          for (double k : roots) {
            re[0] += std::cos(s_grid[i] * k);
            im[0] -= std::sin(s_grid[i] * k);
          }
        }
        profile.magnitude[i] = std::hypot((re[0] + re[1]) + (re[2] + re[3]), (im[0] + im[1]) + (im[2] + im[3]));
      }
    }
  });
  return profile;
}

double sidelobe_window(double k_max, double threshold_fraction) {
  if (!(threshold_fraction > 0.0 && threshold_fraction < 1.0)) {
    throw ValidationError("threshold_fraction", "must lie in (0, 1)");
  }
  const double resolution = 2.0 * kPi / k_max;
  return (1.0 / (kPi * threshold_fraction) + 1.0) * resolution;
}

std::vector<double> detect_peaks(const FourierProfile& profile, double threshold_fraction,
                                 double dominance_window) {
  if (!(threshold_fraction > 0.0 && threshold_fraction < 1.0)) {
    throw ValidationError("threshold_fraction", "must lie in (0, 1)");
  }
  const auto& s = profile.s_grid;
  const auto& a = profile.magnitude;
  const double threshold = threshold_fraction * static_cast<double>(profile.j_roots);
  std::vector<double> peaks;
  for (std::size_t i = 1; i + 1 < a.size(); ++i) {
    if (!(a[i] > a[i - 1] && a[i] >= a[i + 1] && a[i] > threshold)) continue;
    if (dominance_window > 0.0) {
      const auto lo = std::lower_bound(s.begin(), s.end(), s[i] - dominance_window) - s.begin();
      const auto hi = std::upper_bound(s.begin(), s.end(), s[i] + dominance_window) - s.begin();
      const double local = *std::max_element(a.begin() + lo, a.begin() + hi);
      if (local > a[i]) continue;
    }
    const double curvature = a[i - 1] - 2.0 * a[i] + a[i + 1];
    double offset = 0.0;
    if (curvature < 0.0) offset = 0.5 * (a[i - 1] - a[i + 1]) / curvature;
    const double h = offset < 0.0 ? s[i] - s[i - 1] : s[i + 1] - s[i];
    peaks.push_back(s[i] + offset * h);
  }
  return peaks;
}

MatchReport match_peaks(std::span<const double> peaks, std::span<const ActionLine> actions,
                        double tolerance) {
  MatchReport report;
  report.tolerance = tolerance;
  for (double peak : peaks) {
    PeakMatch match{peak, std::nullopt, 0.0};
    const auto it = std::lower_bound(actions.begin(), actions.end(), peak,
                                     [](const ActionLine& line, double s) { return line.s < s; });
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_index = 0;
    for (auto cand = (it == actions.begin() ? it : it - 1); cand != actions.end() && cand <= it; ++cand) {
      const double d = std::abs(cand->s - peak);
      if (d < best) {
        best = d;
        best_index = static_cast<std::size_t>(cand - actions.begin());
      }
    }
    match.residual = best;
    if (best <= tolerance) {
      match.line = best_index;
      report.worst_residual = std::max(report.worst_residual, best);
      if (!actions[best_index].newtonian) ++report.non_newtonian_only;
    } else {
      ++report.unmatched;
    }
    report.matches.push_back(match);
  }
  if (!peaks.empty()) {
    report.matched_fraction =
        static_cast<double>(peaks.size() - report.unmatched) / static_cast<double>(peaks.size());
  }
  return report;
}

double peak_fwhm(const FourierProfile& profile, double center) {
  const auto& s = profile.s_grid;
  const auto& a = profile.magnitude;
  if (s.size() < 3) throw ValidationError("profile", "needs at least three samples");
  auto i = static_cast<std::size_t>(std::lower_bound(s.begin(), s.end(), center) - s.begin());
  i = std::min(i, s.size() - 1);
  // Climb to the local maximum.
  while (i + 1 < a.size() && a[i + 1] > a[i]) ++i;
  while (i > 0 && a[i - 1] > a[i]) --i;
  const double half = 0.5 * a[i];
  std::size_t lo = i;
  while (lo > 0 && a[lo] > half) --lo;
  std::size_t hi = i;
  while (hi + 1 < a.size() && a[hi] > half) ++hi;
  auto cross = [&](std::size_t inside, std::size_t outside) {
    const double t = (a[inside] - half) / (a[inside] - a[outside]);
    return s[inside] + t * (s[outside] - s[inside]);
  };
  return cross(hi - 1, hi) - cross(lo + 1, lo);
}

}  // namespace raysplit
