#include <cmath>
#include <random>

#include "doctest.h"
#include "raysplit/errors.hpp"
#include "raysplit/model.hpp"

using namespace raysplit;
using doctest::Approx;

TEST_CASE("build_potential at the b = 0.7, lambda = 1/2 configuration") {
  const auto pot = build_potential(0.7, 0.5);
  CHECK(pot.beta() == Approx(0.70710678118654752).epsilon(1e-15));
  CHECK(pot.l1() == 0.7);
  CHECK(pot.l2() == Approx(0.21213203435596426).epsilon(1e-15));
  CHECK(pot.omega1() == Approx(0.91213203435596426).epsilon(1e-15));
  CHECK(pot.omega2() == Approx(0.48786796564403574).epsilon(1e-15));
  CHECK(pot.r() == Approx(0.17157287525380990).epsilon(1e-15));
  CHECK(pot.t() == Approx(0.98517143100941604).epsilon(1e-15));
}

TEST_CASE("lambda = 0 is the bare infinite well") {
  const auto pot = build_potential(0.5, 0.0);
  CHECK(pot.beta() == 1.0);
  CHECK(pot.r() == 0.0);
  CHECK(pot.t() == 1.0);
  CHECK(pot.omega1() == 1.0);
  CHECK(pot.omega2() == 0.0);
}

TEST_CASE("equal weighted lengths at b = beta / (1 + beta)") {
  const auto pot = build_potential(0.414213562, 0.5);
  CHECK(std::abs(pot.l1() - pot.l2()) < 1e-9);
  const double b = equal_length_step_position(0.5);
  CHECK(b == Approx(0.41421356237309505).epsilon(1e-15));
  const auto exact = build_potential(b, 0.5);
  CHECK(std::abs(exact.l1() - exact.l2()) < 1e-15);
}

TEST_CASE("build_potential rejects out-of-range parameters by name") {
  auto parameter_of = [](double b, double lambda) {
    try {
      build_potential(b, lambda);
    } catch (const ValidationError& e) {
      return e.parameter();
    }
    return std::string("none");
  };
  CHECK(parameter_of(0.0, 0.5) == "b");
  CHECK(parameter_of(1.0, 0.5) == "b");
  CHECK(parameter_of(NAN, 0.5) == "b");
  CHECK(parameter_of(0.5, 1.0) == "lambda");
  CHECK(parameter_of(0.5, -0.1) == "lambda");
  CHECK(parameter_of(0.5, 0.0) == "none");
}

TEST_CASE("potential invariants over random parameters") {
  std::mt19937_64 rng(20261015);
  std::uniform_real_distribution<double> ub(1e-6, 1.0 - 1e-6);
  std::uniform_real_distribution<double> ul(0.0, 1.0 - 1e-9);
  for (int i = 0; i < 1000; ++i) {
    const auto pot = build_potential(ub(rng), ul(rng));
    CHECK(std::abs(pot.r() * pot.r() + pot.t() * pot.t() - 1.0) < 1e-14);
    CHECK(pot.r() >= 0.0);
    CHECK(pot.r() < 1.0);
    CHECK(pot.beta() > 0.0);
    CHECK(pot.beta() <= 1.0);
    CHECK(pot.l1() > 0.0);
    CHECK(pot.l2() > 0.0);
    CHECK(pot.omega1() == pot.l1() + pot.l2());
    CHECK(pot.omega2() == pot.l1() - pot.l2());
    CHECK(std::abs(pot.omega2()) < pot.omega1());
  }
}

TEST_CASE("interface coefficients") {
  SUBCASE("reproduce the single-step reflection coefficient") {
    const auto c = interface_coefficients(1.0, 0.70710678);
    CHECK(c.r == Approx(0.17157288).epsilon(1e-7));
  }
  SUBCASE("matched sides do not scatter") {
    const auto c = interface_coefficients(0.6, 0.6);
    CHECK(c.r == 0.0);
    CHECK(c.t == 1.0);
  }
  SUBCASE("swapping sides flips r") {
    const auto forward = interface_coefficients(1.0, 0.70710678);
    const auto backward = interface_coefficients(0.70710678, 1.0);
    CHECK(backward.r == -forward.r);
    CHECK(backward.t == forward.t);
    CHECK(backward.r == Approx(-0.17157288).epsilon(1e-7));
  }
  SUBCASE("non-positive beta is rejected") {
    CHECK_THROWS_AS(interface_coefficients(0.0, 1.0), ValidationError);
    CHECK_THROWS_AS(interface_coefficients(1.0, -1.0), ValidationError);
  }
}

TEST_CASE("build_nstep") {
  SUBCASE("single free region") {
    const auto pot = build_nstep({0.0, 1.0}, {0.0});
    REQUIRE(pot.regions() == 1);
    CHECK(pot.lengths()[0] == 1.0);
    CHECK(pot.total_length() == 1.0);
  }
  SUBCASE("two regions reproduce the single step") {
    const auto chain = build_nstep({0.0, 0.7, 1.0}, {0.0, 0.5});
    const auto step = build_potential(0.7, 0.5);
    CHECK(std::abs(chain.betas()[0] - 1.0) < 1e-14);
    CHECK(std::abs(chain.betas()[1] - step.beta()) < 1e-14);
    CHECK(std::abs(chain.lengths()[0] - step.l1()) < 1e-14);
    CHECK(std::abs(chain.lengths()[1] - step.l2()) < 1e-14);
    CHECK(std::abs(chain.total_length() - step.omega1()) < 1e-14);
    const auto c = interface_coefficients(chain.betas()[0], chain.betas()[1]);
    CHECK(std::abs(c.r - step.r()) < 1e-14);
    CHECK(std::abs(c.t - step.t()) < 1e-14);
  }
  SUBCASE("three regions") {
    const auto pot = build_nstep({0.0, 0.3, 0.6, 1.0}, {0.0, 0.5, 0.75});
    CHECK(pot.betas()[0] == Approx(1.0));
    CHECK(pot.betas()[1] == Approx(0.70710678).epsilon(1e-8));
    CHECK(pot.betas()[2] == Approx(0.5));
    CHECK(pot.lengths()[0] == Approx(0.3));
    CHECK(pot.lengths()[1] == Approx(0.21213203).epsilon(1e-8));
    CHECK(pot.lengths()[2] == Approx(0.2));
  }
  SUBCASE("invalid chains") {
    CHECK_THROWS_AS(build_nstep({0.0, 0.5, 0.5, 1.0}, {0.0, 0.1, 0.2}), ValidationError);
    CHECK_THROWS_AS(build_nstep({0.0, 0.6, 0.4, 1.0}, {0.0, 0.1, 0.2}), ValidationError);
    CHECK_THROWS_AS(build_nstep({0.0, 1.0}, {1.0}), ValidationError);
    CHECK_THROWS_AS(build_nstep({0.0, 0.5, 1.0}, {0.0}), ValidationError);
    CHECK_THROWS_AS(build_nstep({0.1, 1.0}, {0.0}), ValidationError);
    CHECK_THROWS_AS(build_nstep({0.0}, {}), ValidationError);
  }
}
