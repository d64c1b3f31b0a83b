#include "raysplit/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <tuple>

#include "raysplit/errors.hpp"

namespace raysplit {

std::string canonical_rotation(std::string_view word) {
  std::string best(word);
  std::string rotated(word);
  for (std::size_t shift = 1; shift < word.size(); ++shift) {
    std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
    if (rotated < best) best = rotated;
  }
  return best;
}

int repetition_count(std::string_view word) {
  const std::size_t n = word.size();
  for (std::size_t period = 1; period < n; ++period) {
    if (n % period != 0) continue;
    bool repeats = true;
    for (std::size_t i = period; i < n && repeats; ++i) repeats = word[i] == word[i - period];
    if (repeats) return static_cast<int>(n / period);
  }
  return 1;
}

OrbitCode::OrbitCode(std::string_view word) {
  if (word.empty()) throw ValidationError("word", "must not be empty");
  if (word.find_first_not_of("LR") != std::string_view::npos) {
    throw ValidationError("word", "symbols must be 'L' or 'R', got \"" + std::string(word) + "\"");
  }
  word_ = canonical_rotation(word);
  nu_ = repetition_count(word_);
}

OrbitCode OrbitCode::primitive() const { return OrbitCode(word_.substr(0, primitive_length())); }

OrbitCode OrbitCode::repeated(int times) const {
  if (times < 1) throw ValidationError("times", "must be >= 1");
  std::string out;
  out.reserve(word_.size() * static_cast<std::size_t>(times));
  for (int i = 0; i < times; ++i) out += word_;
  return OrbitCode(std::move(out), nu_ * times, Canonical{});
}

namespace {

void check_length(int length, const char* name) {
  if (length < 1 || length > kMaxCodeLength) {
    throw ValidationError(name, "must lie in [1, " + std::to_string(kMaxCodeLength) + "], got " +
                                    std::to_string(length));
  }
}

}  // namespace

// Iterative Fredricksen-Kessler-Maiorana generation of binary prenecklaces.
void for_each_necklace(int n, const std::function<void(std::string_view, int)>& visit) {
  check_length(n, "length");
  std::string a(static_cast<std::size_t>(n), 'L');
  visit(a, 1);
  for (;;) {
    int i = n - 1;
    while (i >= 0 && a[static_cast<std::size_t>(i)] == 'R') --i;
    if (i < 0) return;
    a[static_cast<std::size_t>(i)] = 'R';
    const int period = i + 1;
    for (int j = period; j < n; ++j) a[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(j - period)];
    if (n % period == 0) visit(a, period);
  }
}

std::vector<OrbitCode> enumerate_necklaces(int length) {
  check_length(length, "length");
  std::vector<OrbitCode> out;
  for_each_necklace(length, [&](std::string_view word, int period) {
    out.push_back(OrbitCode(std::string(word), length / period, OrbitCode::Canonical{}));
  });
  return out;
}

std::vector<OrbitCode> enumerate_primitive(int max_length) {
  check_length(max_length, "max_length");
  std::vector<OrbitCode> out;
  for (int n = 1; n <= max_length; ++n) {
    for_each_necklace(n, [&](std::string_view word, int period) {
      if (period == n) out.push_back(OrbitCode(std::string(word), 1, OrbitCode::Canonical{}));
    });
  }
  return out;
}

std::vector<OrbitCode> enumerate_primitive_within_action(const ScaledStepPotential& pot, double s_max) {
  const double cost_l = 2.0 * pot.l1();
  const double cost_r = 2.0 * pot.l2();
  const double limit = s_max * (1.0 + 1e-12);
  const int max_length = static_cast<int>(std::floor(limit / std::min(cost_l, cost_r)));
  if (max_length > kMaxCodeLength) {
    throw ValidationError("s_max", "requires codes longer than " + std::to_string(kMaxCodeLength));
  }

  std::vector<OrbitCode> out;
  for (int n = 1; n <= max_length; ++n) {
    // Recursive FKM over 1-based positions; a[0] is a sentinel. Prefix
    // actions only grow, so over-budget prefixes are cut.
    std::string a(static_cast<std::size_t>(n) + 1, 'L');
    std::function<void(int, int, double)> grow = [&](int t, int p, double cost) {
      if (cost > limit) return;
      if (t > n) {
        if (p == n) out.push_back(OrbitCode(a.substr(1), 1, OrbitCode::Canonical{}));
        return;
      }
      const char inherited = a[static_cast<std::size_t>(t - p)];
      a[static_cast<std::size_t>(t)] = inherited;
      grow(t + 1, p, cost + (inherited == 'L' ? cost_l : cost_r));
      if (inherited == 'L') {
        a[static_cast<std::size_t>(t)] = 'R';
        grow(t + 1, t, cost + cost_r);
      }
    };
    grow(1, 1, 0.0);
  }
  return out;
}

OrbitRecord orbit_record(const OrbitCode& code, const ScaledStepPotential& pot) {
  OrbitRecord rec{code};
  const std::string& w = code.word();
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    const char a = w[i];
    const char b = w[(i + 1) % n];
    (a == 'L' ? rec.n_l : rec.n_r) += 1;
    if (a != b) {
      ++rec.tau2;
    } else if (a == 'L') {
      ++rec.ll_pairs;
    } else {
      ++rec.rr_pairs;
    }
  }
  rec.sigma = rec.ll_pairs + rec.rr_pairs;
  rec.sign = ((n + static_cast<std::size_t>(rec.rr_pairs)) % 2 == 0) ? 1 : -1;
  rec.reduced_action = 2.0 * (rec.n_l * pot.l1() + rec.n_r * pot.l2());
  return rec;
}

std::vector<OrbitRecord> orbit_records(std::span<const OrbitCode> codes, const ScaledStepPotential& pot) {
  std::vector<OrbitRecord> out;
  out.reserve(codes.size());
  for (const auto& code : codes) out.push_back(orbit_record(code, pot));
  return out;
}

double amplitude(const OrbitRecord& rec, const ScaledStepPotential& pot) {
  return rec.sign * std::pow(pot.r(), rec.sigma) * std::pow(pot.t(), rec.tau2);
}

double pair_product_amplitude(const OrbitCode& code, const ScaledStepPotential& pot) {
  const std::string& w = code.word();
  double amp = (w.size() % 2 == 0) ? 1.0 : -1.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const char a = w[i];
    const char b = w[(i + 1) % w.size()];
    amp *= (a != b) ? pot.t() : (a == 'L' ? pot.r() : -pot.r());
  }
  return amp;
}

void sort_by_size(std::vector<OrbitRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const OrbitRecord& x, const OrbitRecord& y) {
    return std::forward_as_tuple(x.code.length(), x.reduced_action, x.code.word()) <
           std::forward_as_tuple(y.code.length(), y.reduced_action, y.code.word());
  });
}

std::string repetition_label(const OrbitCode& code, int nu) {
  if (nu == 1) return code.word();
  return "(" + code.word() + ")^" + std::to_string(nu);
}

bool is_newtonian(const OrbitCode& code) {
  return code.primitive().word() == "LR";
}

std::vector<ActionLine> action_spectrum(std::span<const OrbitRecord> orbits, int nu_max, double s_max,
                                        double merge_tolerance) {
  if (nu_max < 1) throw ValidationError("nu_max", "must be >= 1");
  struct Entry {
    double s;
    std::string label;
    bool newtonian;
  };
  std::vector<Entry> entries;
  for (const auto& rec : orbits) {
    if (!rec.code.is_primitive()) {
      throw ValidationError("orbits", "expected primitive orbits, got " + rec.code.word());
    }
    for (int nu = 1; nu <= nu_max; ++nu) {
      const double s = nu * rec.reduced_action;
      if (s > s_max) break;
      entries.push_back({s, repetition_label(rec.code, nu), is_newtonian(rec.code)});
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    return std::tie(x.s, x.label) < std::tie(y.s, y.label);
  });

  std::vector<ActionLine> lines;
  for (const auto& e : entries) {
    if (lines.empty() || e.s - lines.back().s > merge_tolerance) {
      lines.push_back({e.s, {}, false});
    }
    lines.back().labels.push_back(e.label);
    lines.back().newtonian = lines.back().newtonian || e.newtonian;
  }
  return lines;
}

}  // namespace raysplit
