#pragma once

// Quantum-graph view of the step potentials: the well is a chain of bonds,
// one per region, joined at vertices where the wave scatters. A state is a
// directed bond; S(k) maps the amplitude arriving at a vertex onto the bonds
// leaving it and multiplies by the phase exp(i k l) of the outgoing bond.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "raysplit/model.hpp"

namespace raysplit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// 2x2 scattering block of an interior vertex, indexed (left bond, right bond):
/// [[r, t], [t, -r]]. Dead-end vertices reflect with -1.
struct VertexBlock {
  double r;
  double t;
};

class GraphScatteringModel {
 public:
  /// Directed-bond basis orderings.
  enum class Ordering {
    // (1->, 2<-, 1<-, 2->): inward block first, giving S = [[0, -D], [D sigma, 0]].
    kInwardOutward,
    // (1->, 2->, ..., N->, 1<-, 2<-, ..., N<-).
    kDirectionMajor,
  };

  explicit GraphScatteringModel(const ScaledStepPotential& pot);
  explicit GraphScatteringModel(const NStepPotential& pot);

  std::size_t bonds() const noexcept { return bond_lengths_.size(); }
  std::size_t dimension() const noexcept { return 2 * bonds(); }
  Ordering ordering() const noexcept { return ordering_; }
  const Eigen::MatrixXi& connectivity() const noexcept { return connectivity_; }
  const std::vector<VertexBlock>& interior_blocks() const noexcept { return blocks_; }
  const std::vector<double>& bond_lengths() const noexcept { return bond_lengths_; }
  double total_length() const noexcept { return total_length_; }

  /// S(k); unitary for real k.
  ComplexMatrix smatrix(Complex k) const;

  /// det(1 - S(k)).
  Complex det_one_minus_s(Complex k) const;

  /// det(1 - S(k)) rotated onto the real axis: exp(-i k L) det(1 - S(k)) / sqrt(det S(0)).
  /// Real for real k and zero exactly on the spectrum. For a single step it equals -2 f(k).
  double real_secular(double k) const;

 private:
  GraphScatteringModel(std::vector<double> betas, std::vector<double> lengths, Ordering ordering);

  std::size_t index(std::size_t bond, bool rightward) const;

  Ordering ordering_;
  Eigen::MatrixXi connectivity_;
  std::vector<VertexBlock> blocks_;
  std::vector<double> bond_lengths_;
  double total_length_ = 0.0;
  // Static coefficient of each transition; S(k) = diag(exp(i k l_out)) * coefficients_.
  Eigen::MatrixXd coefficients_;
  Complex sqrt_det_s0_;
};

ComplexMatrix build_smatrix(const ScaledStepPotential& pot, Complex k);
ComplexMatrix build_smatrix(const NStepPotential& pot, Complex k);

Complex det_one_minus_s(const ScaledStepPotential& pot, Complex k);
Complex det_one_minus_s(const NStepPotential& pot, Complex k);

/// Tr S(k)^n by repeated multiplication. n >= 1.
Complex trace_power(const ScaledStepPotential& pot, double k, int n);

/// Tr S^{2n} rebuilt from periodic orbits: twice the sum over all words of
/// length n in {L, R}, each weighted by its ray-splitting amplitude and the
/// phase exp(2 i k (n_L l1 + n_R l2)). 1 <= n <= 24.
Complex orbit_trace_sum(const ScaledStepPotential& pot, double k, int n);

/// Spectral staircase from the trace expansion:
/// omega1 k / pi - 1/2 + Im sum_{n <= n_max} Tr S^n / (n pi).
double counting_function(const ScaledStepPotential& pot, double k, int n_max);

/// Largest entry of |S^dagger S - 1|.
double unitarity_defect(const ComplexMatrix& s);

}  // namespace raysplit
