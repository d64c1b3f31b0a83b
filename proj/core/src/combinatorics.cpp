#include "raysplit/combinatorics.hpp"

#include <cmath>
#include <numbers>

#include "raysplit/errors.hpp"
#include "raysplit/model.hpp"
#include "raysplit/orbits.hpp"
#include "raysplit/spectrum.hpp"

namespace raysplit {

std::string WordClassTable::word(const WordClass& c) const {
  std::string out(static_cast<std::size_t>(2 * m), 'L');
  for (std::size_t i = 0; i < out.size(); ++i) {
    if ((c.bits >> i) & 1u) out[i] = 'R';
  }
  return out;
}

mpq_class WordClassTable::primitive_time(const WordClass& c) const {
  mpq_class t(m, c.nu);
  t.canonicalize();
  return t;
}

WordClassTable build_word_table(int m, int max_m) {
  if (max_m > 15) throw ValidationError("max_m", "words longer than 30 symbols are not supported");
  if (m < 1 || m > max_m) {
    throw ValidationError("m", "must lie in [1, " + std::to_string(max_m) + "], got " + std::to_string(m));
  }
  WordClassTable table;
  table.m = m;
  const int length = 2 * m;
  for_each_necklace(length, [&](std::string_view word, int period) {
    WordClass c;
    c.nu = length / period;
    int rr = 0;
    int reflecting = 0;
    int transmitting = 0;
    for (int i = 0; i < length; ++i) {
      const char a = word[static_cast<std::size_t>(i)];
      const char b = word[static_cast<std::size_t>((i + 1) % length)];
      if (a == 'R') c.bits |= std::uint32_t{1} << i;
      if (a != b) {
        ++transmitting;
      } else {
        ++reflecting;
        if (a == 'R') ++rr;
      }
    }
    // A cyclic binary word changes symbol an even number of times.
    c.alpha = rr % 2;
    c.beta = reflecting / 2;
    c.gamma = transmitting / 2;
    table.classes.push_back(c);
  });
  return table;
}

RationalPolynomial::RationalPolynomial(std::vector<mpq_class> coefficients)
    : coefficients_(std::move(coefficients)) {
  trim();
}

void RationalPolynomial::trim() {
  while (!coefficients_.empty() && coefficients_.back() == 0) coefficients_.pop_back();
}

bool RationalPolynomial::is_constant_one() const {
  return coefficients_.size() == 1 && coefficients_[0] == 1;
}

std::string RationalPolynomial::to_string(const std::string& variable) const {
  if (coefficients_.empty()) return "0";
  std::string out;
  for (std::size_t d = 0; d < coefficients_.size(); ++d) {
    const mpq_class& c = coefficients_[d];
    if (c == 0) continue;
    const bool negative = c < 0;
    const mpq_class magnitude = abs(c);
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const bool unit = magnitude == 1;
    if (d == 0 || !unit) out += magnitude.get_str();
    if (d > 0) {
      if (!unit) out += "*";
      out += variable;
      if (d > 1) out += "^" + std::to_string(d);
    }
  }
  return out;
}

RationalPolynomial& RationalPolynomial::operator+=(const RationalPolynomial& other) {
  if (coefficients_.size() < other.coefficients_.size()) coefficients_.resize(other.coefficients_.size());
  for (std::size_t i = 0; i < other.coefficients_.size(); ++i) coefficients_[i] += other.coefficients_[i];
  trim();
  return *this;
}

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (a.coefficients_.empty() || b.coefficients_.empty()) return {};
  std::vector<mpq_class> out(a.coefficients_.size() + b.coefficients_.size() - 1);
  for (std::size_t i = 0; i < a.coefficients_.size(); ++i) {
    for (std::size_t j = 0; j < b.coefficients_.size(); ++j) out[i + j] += a.coefficients_[i] * b.coefficients_[j];
  }
  return RationalPolynomial(std::move(out));
}

std::vector<mpz_class> binomial_row(int m) {
  if (m < 0) throw ValidationError("m", "must be non-negative");
  std::vector<mpz_class> row{1};
  for (int n = 1; n <= m; ++n) {
    std::vector<mpz_class> next(row.size() + 1);
    next.front() = 1;
    next.back() = 1;
    for (std::size_t i = 1; i < row.size(); ++i) next[i] = row[i - 1] + row[i];
    row = std::move(next);
  }
  return row;
}

std::vector<mpq_class> binomial_sums(const WordClassTable& table) {
  std::vector<mpq_class> sums(static_cast<std::size_t>(table.m) + 1, 0);
  for (const auto& c : table.classes) {
    const mpq_class t = table.primitive_time(c);
    auto& slot = sums[static_cast<std::size_t>(c.beta)];
    if (c.alpha == 0) {
      slot += t;
    } else {
      slot -= t;
    }
  }
  return sums;
}

std::vector<mpq_class> binomial_sums(int m) { return binomial_sums(build_word_table(m)); }

SumRuleResult verify_sum_rule(const WordClassTable& table) {
  const int m = table.m;
  // Words sharing beta share gamma = M - beta, so the sum collapses onto M + 1 products.
  const auto sums = binomial_sums(table);
  RationalPolynomial total;
  for (int beta = 0; beta <= m; ++beta) {
    const auto& weight = sums[static_cast<std::size_t>(beta)];
    if (weight == 0) continue;
    const int gamma = m - beta;
    const auto row = binomial_row(gamma);
    std::vector<mpq_class> term(static_cast<std::size_t>(m) + 1, 0);
    for (int j = 0; j <= gamma; ++j) {
      mpq_class c = weight * mpq_class(row[static_cast<std::size_t>(j)]);
      if (j % 2 == 1) c = -c;
      term[static_cast<std::size_t>(beta + j)] = c;
    }
    total += RationalPolynomial(std::move(term));
  }
  SumRuleResult result;
  result.m = m;
  result.holds = total.is_constant_one();
  result.polynomial = std::move(total);
  return result;
}

SumRuleResult verify_sum_rule(int m) { return verify_sum_rule(build_word_table(m)); }

PoissonCheckReport poisson_special_case_check(double lambda, std::size_t root_count, int max_code_length) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw ValidationError("lambda", "must lie in (0, 1)");
  PoissonCheckReport report;
  report.lambda = lambda;
  report.b = equal_length_step_position(lambda);
  const ScaledStepPotential pot(report.b, lambda);
  report.beta = pot.beta();

  const auto spectrum = find_first_roots(pot, root_count);
  report.roots_checked = spectrum.roots.size();
  for (std::size_t n = 0; n < spectrum.roots.size(); ++n) {
    const double exact = static_cast<double>(n + 1) * std::numbers::pi / (2.0 * report.b);
    report.max_root_error = std::max(report.max_root_error, std::abs(spectrum.roots[n] - exact));
  }

  const auto codes = enumerate_primitive(max_code_length);
  report.orbits_checked = codes.size();
  for (const auto& code : codes) {
    const double ratio = orbit_record(code, pot).reduced_action / (2.0 * report.b);
    report.max_action_defect = std::max(report.max_action_defect, std::abs(ratio - std::round(ratio)));
  }
  report.passed = report.max_root_error <= 1e-10 && report.max_action_defect <= 1e-9;
  return report;
}

}  // namespace raysplit
