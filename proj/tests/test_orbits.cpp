#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "raysplit/errors.hpp"
#include "raysplit/orbits.hpp"

using namespace raysplit;
using doctest::Approx;

namespace {

std::vector<std::string> words(const std::vector<OrbitCode>& codes) {
  std::vector<std::string> out;
  for (const auto& c : codes) out.push_back(c.word());
  return out;
}

}  // namespace

TEST_CASE("OrbitCode canonicalizes and measures repetition") {
  const OrbitCode c("RLL");
  CHECK(c.word() == "LLR");
  CHECK(c.nu() == 1);
  const OrbitCode d("RLRL");
  CHECK(d.word() == "LRLR");
  CHECK(d.nu() == 2);
  CHECK(d.primitive_length() == 2);
  CHECK(d.primitive().word() == "LR");
  CHECK(OrbitCode("LR").repeated(3).word() == "LRLRLR");
  CHECK(OrbitCode("LR").repeated(3).nu() == 3);
  CHECK_THROWS_AS(OrbitCode(""), ValidationError);
  CHECK_THROWS_AS(OrbitCode("LXR"), ValidationError);
}

TEST_CASE("enumerate_necklaces small cases") {
  CHECK(words(enumerate_necklaces(1)) == std::vector<std::string>{"L", "R"});
  CHECK(words(enumerate_necklaces(2)) == std::vector<std::string>{"LL", "LR", "RR"});
  CHECK(words(enumerate_necklaces(4)) ==
        std::vector<std::string>{"LLLL", "LLLR", "LLRR", "LRLR", "LRRR", "RRRR"});
  CHECK_THROWS_AS(enumerate_necklaces(0), ValidationError);
  CHECK_THROWS_AS(enumerate_necklaces(33), ValidationError);
}

TEST_CASE("necklaces match brute force and Burnside for length <= 16") {
  for (int n = 1; n <= 16; ++n) {
    const auto codes = enumerate_necklaces(n);
    CHECK(static_cast<long long>(codes.size()) == oracle::necklace_count(n));
    if (n <= 12) {
      const auto reference = oracle::brute_force_necklaces(n);
      const auto got = words(codes);
      CHECK(std::vector<std::string>(reference.begin(), reference.end()) == got);
    }
    for (const auto& c : codes) {
      CHECK(c.word() == canonical_rotation(c.word()));
      CHECK(static_cast<int>(c.length()) % c.nu() == 0);
      CHECK((c.nu() == 1) == !oracle::is_periodic(c.word()));
    }
  }
}

TEST_CASE("enumerate_primitive") {
  CHECK(words(enumerate_primitive(1)) == std::vector<std::string>{"L", "R"});
  CHECK(words(enumerate_primitive(2)) == std::vector<std::string>{"L", "R", "LR"});

  const auto seven = enumerate_primitive(7);
  CHECK(seven.size() == 41);
  std::vector<int> per_length(8, 0);
  for (const auto& c : seven) ++per_length[c.length()];
  CHECK(std::vector<int>(per_length.begin() + 1, per_length.end()) ==
        std::vector<int>{2, 1, 2, 3, 6, 9, 18});

  const auto sixteen = enumerate_primitive(16);
  for (int n = 1; n <= 16; ++n) {
    const auto count = std::count_if(sixteen.begin(), sixteen.end(),
                                     [n](const OrbitCode& c) { return static_cast<int>(c.length()) == n; });
    CHECK(count == oracle::lyndon_count(n));
  }
}

TEST_CASE("orbit records at b = 0.7, lambda = 1/2") {
  const auto pot = build_potential(0.7, 0.5);
  SUBCASE("L") {
    const auto rec = orbit_record(OrbitCode("L"), pot);
    CHECK(rec.n_l == 1);
    CHECK(rec.sigma == 1);
    CHECK(rec.tau2 == 0);
    CHECK(rec.sign == -1);
    CHECK(rec.reduced_action == Approx(1.4));
    CHECK(amplitude(rec, pot) == Approx(-pot.r()));
  }
  SUBCASE("R") {
    const auto rec = orbit_record(OrbitCode("R"), pot);
    CHECK(rec.sigma == 1);
    CHECK(rec.rr_pairs == 1);
    CHECK(rec.sign == 1);
    CHECK(rec.reduced_action == Approx(0.42426407).epsilon(1e-8));
    CHECK(amplitude(rec, pot) == Approx(pot.r()));
  }
  SUBCASE("LR is the Newtonian orbit") {
    const auto rec = orbit_record(OrbitCode("LR"), pot);
    CHECK(rec.sigma == 0);
    CHECK(rec.tau2 == 2);
    CHECK(rec.sign == 1);
    CHECK(rec.reduced_action == Approx(2.0 * pot.omega1()));
    CHECK(rec.reduced_action == Approx(1.82426407).epsilon(1e-8));
    CHECK(amplitude(rec, pot) == Approx(pot.t() * pot.t()));
    CHECK(is_newtonian(rec.code));
    CHECK(rec.period(2.0) == Approx(rec.reduced_action / 4.0));
  }
  SUBCASE("LLRR") {
    const auto rec = orbit_record(OrbitCode("LLRR"), pot);
    CHECK(amplitude(rec, pot) == Approx(-0.028570699745639325).epsilon(1e-14));
  }
  SUBCASE("LRLR is the square of LR") {
    const auto lr = orbit_record(OrbitCode("LR"), pot);
    const auto lrlr = orbit_record(OrbitCode("LRLR"), pot);
    CHECK(amplitude(lrlr, pot) == Approx(std::pow(pot.t(), 4)).epsilon(1e-15));
    CHECK(amplitude(lrlr, pot) == Approx(amplitude(lr, pot) * amplitude(lr, pot)).epsilon(1e-15));
  }
}

TEST_CASE("lambda = 0 keeps only the alternating orbits") {
  const auto pot = build_potential(0.4, 0.0);
  for (const auto& code : enumerate_primitive(8)) {
    const auto rec = orbit_record(code, pot);
    if (rec.sigma == 0) {
      CHECK(amplitude(rec, pot) == 1.0);
    } else {
      CHECK(amplitude(rec, pot) == 0.0);
    }
  }
  CHECK(amplitude(orbit_record(OrbitCode("LR"), pot), pot) == 1.0);
}

TEST_CASE("record invariants and repetition law") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ub(0.05, 0.95);
  std::uniform_real_distribution<double> ul(0.0, 0.95);
  for (int trial = 0; trial < 5; ++trial) {
    const auto pot = build_potential(ub(rng), ul(rng));
    for (const auto& code : enumerate_primitive(10)) {
      const auto rec = orbit_record(code, pot);
      const int length = static_cast<int>(code.length());
      CHECK(rec.n_l + rec.n_r == length);
      CHECK(rec.sigma + rec.tau2 == length);
      CHECK(rec.tau2 % 2 == 0);
      CHECK((rec.sign == 1 || rec.sign == -1));
      CHECK(rec.reduced_action > 0.0);
      const double amp = amplitude(rec, pot);
      CHECK(std::abs(amp - pair_product_amplitude(code, pot)) < 1e-14);
      CHECK(std::abs(amp) <= 1.0);
      for (int nu = 2; nu <= 3; ++nu) {
        const auto rep = orbit_record(code.repeated(nu), pot);
        CHECK(rep.reduced_action == Approx(nu * rec.reduced_action).epsilon(1e-14));
        CHECK(amplitude(rep, pot) == Approx(std::pow(amp, nu)).epsilon(1e-13).scale(1e-300));
      }
    }
  }
}

TEST_CASE("action spectrum") {
  const auto pot = build_potential(0.7, 0.5);
  SUBCASE("shortest orbits, two repetitions") {
    const std::vector<OrbitCode> codes{OrbitCode("L"), OrbitCode("R"), OrbitCode("LR")};
    const auto records = orbit_records(codes, pot);
    const auto lines = action_spectrum(records, 2, 4.0);
    const std::vector<double> expected{0.42426407, 0.84852814, 1.4, 1.82426407, 2.8, 3.64852814};
    REQUIRE(lines.size() == expected.size());
    for (std::size_t i = 0; i < lines.size(); ++i) CHECK(lines[i].s == Approx(expected[i]).epsilon(1e-8));
    CHECK(lines[3].labels == std::vector<std::string>{"LR"});
    CHECK(lines[3].newtonian);
    CHECK_FALSE(lines[0].newtonian);
    CHECK(lines[5].labels == std::vector<std::string>{"(LR)^2"});
  }
  SUBCASE("multiples of a single orbit") {
    const std::vector<OrbitCode> codes{OrbitCode("L")};
    const auto lines = action_spectrum(orbit_records(codes, pot), 3, 100.0);
    REQUIRE(lines.size() == 3);
    for (int nu = 1; nu <= 3; ++nu) CHECK(lines[nu - 1].s == Approx(2.0 * nu * pot.l1()));
  }
  SUBCASE("equal weighted lengths put every action on the 2b lattice and merge coincidences") {
    const double b = equal_length_step_position(0.5);
    const auto degenerate = build_potential(b, 0.5);
    const auto lines = action_spectrum(orbit_records(enumerate_primitive(6), degenerate), 3, 20.0);
    for (const auto& line : lines) {
      const double ratio = line.s / (2.0 * b);
      CHECK(std::abs(ratio - std::round(ratio)) < 1e-9);
    }
    // LR, LL-free orbits of length 2 and the squares of L and R all land on 4b.
    const auto at_4b = std::find_if(lines.begin(), lines.end(),
                                    [&](const ActionLine& l) { return std::abs(l.s - 4 * b) < 1e-9; });
    REQUIRE(at_4b != lines.end());
    CHECK(at_4b->labels.size() == 3);
    CHECK(at_4b->newtonian);
  }
  SUBCASE("non-primitive input is rejected") {
    const std::vector<OrbitCode> codes{OrbitCode("LL")};
    CHECK_THROWS_AS(action_spectrum(orbit_records(codes, pot), 1, 10.0), ValidationError);
  }
}

TEST_CASE("enumerate_primitive_within_action matches a filtered full enumeration") {
  const auto pot = build_potential(0.7, 0.5);
  const double s_max = 4.5;
  const auto pruned = enumerate_primitive_within_action(pot, s_max);
  std::vector<std::string> reference;
  for (const auto& code : enumerate_primitive(12)) {
    if (orbit_record(code, pot).reduced_action <= s_max) reference.push_back(code.word());
  }
  auto got = words(pruned);
  std::sort(got.begin(), got.end());
  std::sort(reference.begin(), reference.end());
  CHECK(got == reference);
}

TEST_CASE("sort_by_size orders by length, then action, then word") {
  const auto pot = build_potential(0.7, 0.5);
  auto records = orbit_records(enumerate_primitive(5), pot);
  std::reverse(records.begin(), records.end());
  sort_by_size(records);
  CHECK(records[0].code.word() == "R");
  CHECK(records[1].code.word() == "L");
  CHECK(records[2].code.word() == "LR");
  for (std::size_t i = 1; i < records.size(); ++i) {
    CHECK(records[i - 1].code.length() <= records[i].code.length());
  }
}
