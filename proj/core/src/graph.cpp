#include "raysplit/graph.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "raysplit/errors.hpp"

namespace raysplit {

namespace {

std::vector<double> betas_of(const ScaledStepPotential& pot) { return {1.0, pot.beta()}; }
std::vector<double> lengths_of(const ScaledStepPotential& pot) { return {pot.l1(), pot.l2()}; }

}  // namespace

GraphScatteringModel::GraphScatteringModel(const ScaledStepPotential& pot)
    : GraphScatteringModel(betas_of(pot), lengths_of(pot), Ordering::kInwardOutward) {}

GraphScatteringModel::GraphScatteringModel(const NStepPotential& pot)
    : GraphScatteringModel({pot.betas().begin(), pot.betas().end()},
                           {pot.lengths().begin(), pot.lengths().end()}, Ordering::kDirectionMajor) {}

GraphScatteringModel::GraphScatteringModel(std::vector<double> betas, std::vector<double> lengths,
                                           Ordering ordering)
    : ordering_(ordering), bond_lengths_(std::move(lengths)) {
  const std::size_t n = bond_lengths_.size();
  for (double l : bond_lengths_) total_length_ += l;

  connectivity_ = Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(n + 1));
  for (std::size_t v = 0; v < n; ++v) {
    connectivity_(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v + 1)) = 1;
    connectivity_(static_cast<Eigen::Index>(v + 1), static_cast<Eigen::Index>(v)) = 1;
  }
  for (std::size_t v = 0; v + 1 < n; ++v) {
    const auto c = interface_coefficients(betas[v], betas[v + 1]);
    blocks_.push_back({c.r, c.t});
  }

  const auto dim = static_cast<Eigen::Index>(dimension());
  coefficients_ = Eigen::MatrixXd::Zero(dim, dim);
  auto set = [&](std::size_t out_bond, bool out_right, std::size_t in_bond, bool in_right, double c) {
    coefficients_(static_cast<Eigen::Index>(index(out_bond, out_right)),
                  static_cast<Eigen::Index>(index(in_bond, in_right))) = c;
  };
  for (std::size_t j = 0; j < n; ++j) {
    // Rightward on bond j arrives at vertex j + 1.
    if (j + 1 == n) {
      set(j, false, j, true, -1.0);
    } else {
      set(j, false, j, true, blocks_[j].r);
      set(j + 1, true, j, true, blocks_[j].t);
    }
    // Leftward on bond j arrives at vertex j.
    if (j == 0) {
      set(0, true, 0, false, -1.0);
    } else {
      set(j, true, j, false, -blocks_[j - 1].r);
      set(j - 1, false, j, false, blocks_[j - 1].t);
    }
  }
  // det S(0) is real; drop rounding noise so the branch does not hinge on a signed zero.
  Complex det0 = smatrix(0.0).determinant();
  if (std::abs(det0.imag()) < 1e-12 * std::abs(det0)) det0 = Complex(det0.real(), 0.0);
  sqrt_det_s0_ = std::sqrt(det0);
}

std::size_t GraphScatteringModel::index(std::size_t bond, bool rightward) const {
  const std::size_t n = bonds();
  if (ordering_ == Ordering::kInwardOutward) {
    // Inward states (towards the middle vertex) first, then outward ones.
    const bool inward = (bond == 0) == rightward;
    return (inward ? 0 : 2) + bond;
  }
  return rightward ? bond : n + bond;
}

ComplexMatrix GraphScatteringModel::smatrix(Complex k) const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  ComplexMatrix s(dim, dim);
  for (std::size_t bond = 0; bond < bonds(); ++bond) {
    const Complex phase = std::exp(Complex(0.0, 1.0) * k * bond_lengths_[bond]);
    for (bool right : {true, false}) {
      const auto row = static_cast<Eigen::Index>(index(bond, right));
      s.row(row) = phase * coefficients_.row(row).cast<Complex>();
    }
  }
  return s;
}

Complex GraphScatteringModel::det_one_minus_s(Complex k) const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  return (ComplexMatrix::Identity(dim, dim) - smatrix(k)).determinant();
}

double GraphScatteringModel::real_secular(double k) const {
  const Complex rotated =
      det_one_minus_s(k) * std::exp(Complex(0.0, -k * total_length_)) / sqrt_det_s0_;
  return rotated.real();
}

ComplexMatrix build_smatrix(const ScaledStepPotential& pot, Complex k) {
  return GraphScatteringModel(pot).smatrix(k);
}

ComplexMatrix build_smatrix(const NStepPotential& pot, Complex k) {
  return GraphScatteringModel(pot).smatrix(k);
}

Complex det_one_minus_s(const ScaledStepPotential& pot, Complex k) {
  return GraphScatteringModel(pot).det_one_minus_s(k);
}

Complex det_one_minus_s(const NStepPotential& pot, Complex k) {
  return GraphScatteringModel(pot).det_one_minus_s(k);
}

Complex trace_power(const ScaledStepPotential& pot, double k, int n) {
  if (n < 1) throw ValidationError("n", "must be >= 1");
  const ComplexMatrix s = build_smatrix(pot, k);
  ComplexMatrix power = s;
  for (int i = 1; i < n; ++i) power = power * s;
  return power.trace();
}

Complex orbit_trace_sum(const ScaledStepPotential& pot, double k, int n) {
  if (n < 1 || n > 24) throw ValidationError("n", "must lie in [1, 24]");
  const double r = pot.r();
  const double t = pot.t();
  // Amplitudes grouped by the number of R symbols, which fixes the phase.
  std::vector<double> by_right_count(static_cast<std::size_t>(n) + 1, 0.0);
  const std::uint32_t words = std::uint32_t{1} << n;
  for (std::uint32_t w = 0; w < words; ++w) {
    double amp = 1.0;
    for (int i = 0; i < n; ++i) {
      const bool a = (w >> i) & 1u;
      const bool b = (w >> ((i + 1) % n)) & 1u;
      amp *= (a != b) ? t : (a ? -r : r);
    }
    by_right_count[static_cast<std::size_t>(std::popcount(w))] += amp;
  }
  Complex sum = 0.0;
  for (int n_r = 0; n_r <= n; ++n_r) {
    const double length = (n - n_r) * pot.l1() + n_r * pot.l2();
    sum += by_right_count[static_cast<std::size_t>(n_r)] * std::exp(Complex(0.0, 2.0 * k * length));
  }
  const double wall_sign = (n % 2 == 0) ? 1.0 : -1.0;
  return 2.0 * wall_sign * sum;
}

double counting_function(const ScaledStepPotential& pot, double k, int n_max) {
  if (n_max < 1) throw ValidationError("n_max", "must be >= 1");
  const ComplexMatrix s = build_smatrix(pot, k);
  ComplexMatrix power = s;
  Complex series = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    series += power.trace() / static_cast<double>(n);
    if (n < n_max) power = power * s;
  }
  return pot.omega1() * k / std::numbers::pi - 0.5 + series.imag() / std::numbers::pi;
}

double unitarity_defect(const ComplexMatrix& s) {
  const ComplexMatrix product = s.adjoint() * s - ComplexMatrix::Identity(s.rows(), s.cols());
  return product.cwiseAbs().maxCoeff();
}

}  // namespace raysplit
