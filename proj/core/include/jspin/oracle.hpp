#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "jspin/block_state.hpp"

namespace jspin {

/// Thrown when a brute-force computation would exceed the product-space
/// size guard.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Diagonal n-particle product state in the (2s+1)^n product basis.
/// Index digits run over single-particle levels m_s descending, particle 1
/// most significant.
struct ProductState {
  int n = 1;
  HalfInt s = HalfInt::half();
  Eigen::VectorXd diag;

  static ProductState from_spec(const EnsembleSpec& spec);
};

/// Orthonormal basis obtained by sequentially coupling particles 1..n.
/// Column c is the coupled state with intermediate spins chains[c] =
/// (j_1, ..., j_n) and projection proj[c], expanded over the product basis.
struct CouplingChain {
  int n = 1;
  HalfInt s = HalfInt::half();
  Eigen::MatrixXd basis;
  std::vector<std::vector<HalfInt>> chains;
  std::vector<HalfInt> proj;

  int dim() const { return static_cast<int>(basis.rows()); }
};

/// Throws ResourceError when (2s+1)^n >= 2^20.
CouplingChain build_coupled_basis(int n, HalfInt s);

/// Brute-force reduced state: transforms the diagonal product state to the
/// coupled basis and traces over the intermediate-spin chains, keeping
/// populations and the final-step j-coherence bands.
BlockState brute_force_reduced(const EnsembleSpec& spec);

enum class TwistKind {
  one_axis,  // U = exp(-i (mu/2) Jy^2), strength = mu
  two_axis,  // U = exp(-i (lambda/4) (J+^2 - J-^2)/(2i)), strength = lambda
};

/// Full product-space evolution with collective operators built as sums of
/// single-particle operators. Guarded at dimension 4096 (dense
/// eigendecomposition).
Moments brute_force_evolve(const EnsembleSpec& spec, TwistKind kind, double strength);

struct TransverseCovariance {
  double var_x = 0.0;
  double var_y = 0.0;
  double cov_xy = 0.0;
};

/// Transverse covariance of the evolved product state (same guard).
TransverseCovariance brute_force_transverse(const EnsembleSpec& spec, TwistKind kind,
                                            double strength);

}  // namespace jspin
