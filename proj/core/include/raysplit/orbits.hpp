#pragma once

// Periodic orbits of the single-step potential. An orbit is a cyclic word over
// {L, R}: each symbol is one round trip on the left (L) or right (R) bond,
// ending in a wall bounce. Between consecutive symbols the orbit meets the
// step, where LL reflects (r), RR reflects (-r), and LR/RL transmits (t).

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "raysplit/model.hpp"

namespace raysplit {

/// Lexicographically smallest rotation of a word over {L, R}.
std::string canonical_rotation(std::string_view word);

/// Largest nu such that the word is a nu-fold repeat of a shorter block.
int repetition_count(std::string_view word);

/// Canonical representative of a rotation class.
class OrbitCode {
 public:
  /// Canonicalizes `word`; throws ValidationError on an empty word or a symbol
  /// other than 'L' or 'R'.
  explicit OrbitCode(std::string_view word);

  const std::string& word() const noexcept { return word_; }
  std::size_t length() const noexcept { return word_.size(); }
  int nu() const noexcept { return nu_; }
  std::size_t primitive_length() const noexcept { return word_.size() / static_cast<std::size_t>(nu_); }
  bool is_primitive() const noexcept { return nu_ == 1; }

  OrbitCode primitive() const;
  OrbitCode repeated(int times) const;

  friend bool operator==(const OrbitCode&, const OrbitCode&) = default;

 private:
  struct Canonical {};
  OrbitCode(std::string word, int nu, Canonical) : word_(std::move(word)), nu_(nu) {}

  std::string word_;
  int nu_ = 1;

  friend std::vector<OrbitCode> enumerate_necklaces(int length);
  friend std::vector<OrbitCode> enumerate_primitive(int max_length);
  friend std::vector<OrbitCode> enumerate_primitive_within_action(const ScaledStepPotential&, double);
};

inline constexpr int kMaxCodeLength = 32;

/// One representative per rotation class of words of the given length, in
/// lexicographic order (L < R). 1 <= length <= kMaxCodeLength.
std::vector<OrbitCode> enumerate_necklaces(int length);

/// Calls visit(word, period) for every necklace of the given length in
/// lexicographic order; the word is primitive iff period == length.
void for_each_necklace(int length, const std::function<void(std::string_view, int)>& visit);

/// All primitive necklaces of length 1..max_length, by length then lexicographically.
std::vector<OrbitCode> enumerate_primitive(int max_length);

/// All primitive orbits with reduced action at most s_max.
std::vector<OrbitCode> enumerate_primitive_within_action(const ScaledStepPotential& pot, double s_max);

struct OrbitRecord {
  OrbitCode code;
  int n_l = 0;
  int n_r = 0;
  /// Reflections at the step (LL and RR pairs).
  int sigma = 0;
  /// Transmissions through the step (LR and RL pairs); always even.
  int tau2 = 0;
  int ll_pairs = 0;
  int rr_pairs = 0;
  /// (-1)^chi = (-1)^(length + rr_pairs).
  int sign = 1;
  /// S0 = 2 (n_l l1 + n_r l2); the action is S0 * k.
  double reduced_action = 0.0;

  /// Period dS/dE = S0 / (2k).
  double period(double k) const { return reduced_action / (2.0 * k); }
};

OrbitRecord orbit_record(const OrbitCode& code, const ScaledStepPotential& pot);
std::vector<OrbitRecord> orbit_records(std::span<const OrbitCode> codes, const ScaledStepPotential& pot);

/// sign * r^sigma * t^tau2.
double amplitude(const OrbitRecord& rec, const ScaledStepPotential& pot);

/// (-1)^length times the product of the per-pair factors r, -r, t around the cycle.
double pair_product_amplitude(const OrbitCode& code, const ScaledStepPotential& pot);

/// Sorts by length, then reduced action, then word.
void sort_by_size(std::vector<OrbitRecord>& records);

/// Label for the nu-th repetition, e.g. "LRR" or "(LRR)^2".
std::string repetition_label(const OrbitCode& code, int nu);

/// True for the Newtonian orbit LR and its repetitions.
bool is_newtonian(const OrbitCode& code);

struct ActionLine {
  double s = 0.0;
  std::vector<std::string> labels;
  bool newtonian = false;
};

/// Peak positions nu * S0 <= s_max for nu <= nu_max, merged when closer than
/// `merge_tolerance` and sorted.
std::vector<ActionLine> action_spectrum(std::span<const OrbitRecord> orbits, int nu_max, double s_max,
                                        double merge_tolerance = 1e-9);

}  // namespace raysplit
