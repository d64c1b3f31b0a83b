#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "doctest.h"
#include "raysplit/errors.hpp"
#include "raysplit/graph.hpp"
#include "raysplit/spectrum.hpp"

using namespace raysplit;
using doctest::Approx;
constexpr double kPi = std::numbers::pi;

namespace {

Complex cexp(double phase) { return std::exp(Complex(0.0, phase)); }

}  // namespace

TEST_CASE("graph structure for the single step") {
  const auto pot = build_potential(0.7, 0.5);
  const GraphScatteringModel model(pot);
  CHECK(model.bonds() == 2);
  CHECK(model.dimension() == 4);
  Eigen::Matrix3i chain;
  chain << 0, 1, 0, 1, 0, 1, 0, 1, 0;
  CHECK(model.connectivity() == chain);
  REQUIRE(model.interior_blocks().size() == 1);
  CHECK(model.interior_blocks()[0].r == pot.r());
  CHECK(model.interior_blocks()[0].t == pot.t());
}

TEST_CASE("S(k) has the block form [[0, -D], [D sigma, 0]]") {
  const auto pot = build_potential(0.7, 0.5);
  const double k = 1.3;
  const auto s = build_smatrix(pot, k);
  const Complex d1 = cexp(pot.l1() * k);
  const Complex d2 = cexp(pot.l2() * k);
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 2) = -d1;
  expected(1, 3) = -d2;
  expected(2, 0) = d1 * pot.r();
  expected(2, 1) = d1 * pot.t();
  expected(3, 0) = d2 * pot.t();
  expected(3, 1) = -d2 * pot.r();
  CHECK((s - expected).cwiseAbs().maxCoeff() < 1e-15);

  SUBCASE("k = 0 leaves only the vertex blocks") {
    const auto s0 = build_smatrix(pot, 0.0);
    CHECK(s0(0, 2) == Complex(-1.0));
    CHECK(s0(2, 0) == Complex(pot.r()));
    CHECK(s0(3, 1) == Complex(-pot.r()));
  }
  SUBCASE("lambda = 0 transmits everything") {
    const auto free_s = build_smatrix(build_potential(0.4, 0.0), 0.0);
    CHECK(free_s(2, 0) == Complex(0.0));
    CHECK(free_s(3, 0) == Complex(1.0));
    CHECK(free_s(2, 1) == Complex(1.0));
    CHECK(free_s(3, 1) == Complex(0.0));
  }
}

TEST_CASE("unitarity for random k") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uk(0.0, 100.0);
  const auto pot = build_potential(0.7, 0.5);
  const auto chain = build_nstep({0.0, 0.3, 0.6, 1.0}, {0.0, 0.5, 0.75});
  for (int i = 0; i < 100; ++i) {
    const double k = uk(rng);
    CHECK(unitarity_defect(build_smatrix(pot, k)) < 1e-12);
    CHECK(unitarity_defect(build_smatrix(chain, k)) < 1e-12);
  }
  CHECK(unitarity_defect(build_smatrix(pot, 1.0)) < 1e-12);
}

TEST_CASE("det(1 - S) vanishes on the spectrum") {
  CHECK(std::abs(det_one_minus_s(build_potential(0.5, 0.0), kPi)) < 1e-12);
  const auto pot = build_potential(0.7, 0.5);
  const auto roots = find_first_roots(pot, 100).roots;
  CHECK(roots[0] == Approx(3.255).epsilon(1e-3));
  for (double k : roots) CHECK(std::abs(det_one_minus_s(pot, k)) < 1e-8);
  CHECK(std::abs(det_one_minus_s(pot, 1.0)) > 0.1);

  SUBCASE("magnitude is twice the secular function") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uk(0.0, 100.0);
    for (int i = 0; i < 100; ++i) {
      const double k = uk(rng);
      CHECK(std::abs(det_one_minus_s(pot, k)) == Approx(2.0 * std::abs(secular(pot, k))).epsilon(1e-12).scale(1.0));
      CHECK(GraphScatteringModel(pot).real_secular(k) == Approx(-2.0 * secular(pot, k)).epsilon(1e-12).scale(1.0));
    }
  }
  SUBCASE("no extra zeros between consecutive roots") {
    // |det| / |f| is constant, so a minimum of |det| can only sit on a root.
    for (std::size_t n = 0; n + 1 < 20; ++n) {
      const double lo = roots[n];
      const double hi = roots[n + 1];
      double smallest = std::numeric_limits<double>::infinity();
      for (int j = 1; j < 200; ++j) {
        const double k = lo + (hi - lo) * j / 200.0;
        smallest = std::min(smallest, std::abs(det_one_minus_s(pot, k)));
      }
      CHECK(smallest > 1e-3);
    }
  }
}

TEST_CASE("N-step chain matches the single step up to basis ordering") {
  const auto pot = build_potential(0.7, 0.5);
  const auto chain = to_nstep(pot);
  CHECK(GraphScatteringModel(chain).ordering() == GraphScatteringModel::Ordering::kDirectionMajor);
  for (double k : {0.3, 2.0, 17.5}) {
    CHECK(std::abs(det_one_minus_s(chain, k) - det_one_minus_s(pot, k)) < 1e-13);
    const auto a = build_smatrix(pot, k);
    const auto b = build_smatrix(chain, k);
    ComplexMatrix pa = a;
    ComplexMatrix pb = b;
    for (int n = 1; n <= 6; ++n) {
      CHECK(std::abs(pa.trace() - pb.trace()) < 1e-13);
      pa = pa * a;
      pb = pb * b;
    }
  }
}

TEST_CASE("trace powers") {
  const auto pot = build_potential(0.7, 0.5);
  SUBCASE("odd powers vanish") {
    for (double k : {0.0, 1.1, 2.0, 37.0}) {
      CHECK(std::abs(trace_power(pot, k, 3)) < 1e-12);
      CHECK(std::abs(trace_power(pot, k, 1)) < 1e-12);
      CHECK(std::abs(trace_power(pot, k, 7)) < 1e-12);
    }
  }
  SUBCASE("Tr S^2 is the sum over the words L and R") {
    const double k = 2.0;
    const Complex expected = 2.0 * (-pot.r() * cexp(2 * pot.l1() * k) + pot.r() * cexp(2 * pot.l2() * k));
    CHECK(std::abs(trace_power(pot, k, 2) - expected) < 1e-12);
    CHECK(std::abs(orbit_trace_sum(pot, k, 1) - expected) < 1e-12);
  }
  SUBCASE("lambda = 0: only alternating words survive") {
    const auto free_pot = build_potential(0.35, 0.0);
    const double k = 1.7;
    CHECK(std::abs(trace_power(free_pot, k, 2)) < 1e-12);
    // Words LR and RL, each with amplitude t^2 = 1.
    CHECK(std::abs(trace_power(free_pot, k, 4) - 4.0 * cexp(2.0 * k)) < 1e-12);
    for (int n = 1; n <= 10; ++n) {
      CHECK(std::abs(orbit_trace_sum(free_pot, k, n) - trace_power(free_pot, k, 2 * n)) < 1e-12);
    }
  }
  SUBCASE("word sums reproduce Tr S^{2n}") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uk(0.0, 100.0);
    for (int i = 0; i < 20; ++i) {
      const double k = uk(rng);
      for (int n = 1; n <= 12; ++n) {
        CHECK(std::abs(orbit_trace_sum(pot, k, n) - trace_power(pot, k, 2 * n)) < 1e-10);
      }
    }
    CHECK(std::abs(orbit_trace_sum(pot, 5.0, 2) - trace_power(pot, 5.0, 4)) < 1e-10);
  }
  SUBCASE("argument checks") {
    CHECK_THROWS_AS(trace_power(pot, 1.0, 0), ValidationError);
    CHECK_THROWS_AS(orbit_trace_sum(pot, 1.0, 25), ValidationError);
    CHECK_THROWS_AS(orbit_trace_sum(pot, 1.0, 0), ValidationError);
  }
}

TEST_CASE("counting function from the trace expansion") {
  SUBCASE("free well below the first level") {
    CHECK(std::abs(counting_function(build_potential(0.5, 0.0), kPi / 2, 400)) < 0.01);
  }
  SUBCASE("between the first two levels") {
    const auto pot = build_potential(0.7, 0.5);
    const auto roots = find_first_roots(pot, 2).roots;
    const double mid = 0.5 * (roots[0] + roots[1]);
    CHECK(std::abs(counting_function(pot, mid, 200) - 1.0) < 0.2);
  }
  SUBCASE("differences count the levels in between") {
    const auto pot = build_potential(0.7, 0.5);
    const auto roots = find_first_roots(pot, 12).roots;
    const double a = 0.5 * (roots[1] + roots[2]);
    const double b = 0.5 * (roots[10] + roots[11]);
    CHECK(std::abs((counting_function(pot, b, 400) - counting_function(pot, a, 400)) - 9.0) < 0.2);
  }
}
