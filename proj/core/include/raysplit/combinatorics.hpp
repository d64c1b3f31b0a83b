#pragma once

// Exact sum rules over cyclic binary words of even length 2M.
//
// Scanning a word cyclically and replacing each adjacent pair by
// LR, RL -> t, LL -> r, RR -> -r turns it into (-1)^alpha (r^2)^beta (t^2)^gamma.
// With primitive time T_w = M / nu_w the weights obey
//
//   sum_w T_w (-1)^alpha_w x^beta_w (1 - x)^gamma_w = 1,      x = r^2,
//
// equivalently sum_{w : beta_w = beta} (-1)^alpha_w T_w = C(M, beta).
// Everything here is computed with GMP rationals.

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace raysplit {

inline constexpr int kDefaultMaxHalfLength = 13;

struct WordClass {
  /// Canonical word, bit i set when symbol i is R.
  std::uint32_t bits = 0;
  int nu = 1;
  /// Parity of the number of RR pairs.
  int alpha = 0;
  /// Half the number of reflecting (LL, RR) pairs.
  int beta = 0;
  /// Half the number of transmitting (LR, RL) pairs.
  int gamma = 0;
};

struct WordClassTable {
  int m = 0;
  std::vector<WordClass> classes;
  std::string provenance = "LR->t, RL->t, LL->r, RR->-r";

  std::string word(const WordClass& c) const;
  /// T_w = M / nu_w.
  mpq_class primitive_time(const WordClass& c) const;
};

/// All rotation classes of words of length 2M, in lexicographic order.
/// Throws ValidationError unless 1 <= m <= max_m (at most 15).
WordClassTable build_word_table(int m, int max_m = kDefaultMaxHalfLength);

/// Dense polynomial with exact rational coefficients, lowest degree first.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<mpq_class> coefficients);

  const std::vector<mpq_class>& coefficients() const noexcept { return coefficients_; }
  int degree() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }
  bool is_constant_one() const;
  std::string to_string(const std::string& variable = "x") const;

  RationalPolynomial& operator+=(const RationalPolynomial& other);
  friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);

 private:
  void trim();
  std::vector<mpq_class> coefficients_;
};

/// Per-beta signed sums of primitive times, indexed 0..M.
std::vector<mpq_class> binomial_sums(const WordClassTable& table);
std::vector<mpq_class> binomial_sums(int m);

/// C(M, 0..M).
std::vector<mpz_class> binomial_row(int m);

struct SumRuleResult {
  int m = 0;
  RationalPolynomial polynomial;
  bool holds = false;
};

/// Expands sum_w T_w (-1)^alpha x^beta (1 - x)^gamma exactly.
SumRuleResult verify_sum_rule(const WordClassTable& table);
SumRuleResult verify_sum_rule(int m);

struct PoissonCheckReport {
  double lambda = 0.0;
  double beta = 0.0;
  double b = 0.0;
  std::size_t roots_checked = 0;
  double max_root_error = 0.0;
  std::size_t orbits_checked = 0;
  /// Largest distance of S0_p / (2b) from an integer.
  double max_action_defect = 0.0;
  bool passed = false;
};

/// Checks the equal-length geometry b = beta / (1 + beta): the spectrum must be
/// n pi / (2b) and every orbit action an integer multiple of 2b.
PoissonCheckReport poisson_special_case_check(double lambda, std::size_t root_count = 100,
                                              int max_code_length = 8);

}  // namespace raysplit
