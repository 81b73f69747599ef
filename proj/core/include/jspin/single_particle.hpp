#pragma once

#include <Eigen/Dense>

namespace jspin {

/// Result of diagonalizing a 2x2 single-particle density matrix.
struct SingleParticleDiag {
  double p = 0.5;            // larger eigenvalue, in [1/2, 1]
  Eigen::Vector3d bloch;     // Bloch vector of the input
  Eigen::Matrix2cd basis;    // columns: eigenvectors of p and 1-p;
                             // basis.adjoint() * rho * basis = diag(p, 1-p)
};

/// Diagonalizes a Hermitian, unit-trace, positive-semidefinite 2x2 matrix.
/// Throws std::invalid_argument if the input fails validation (tolerance
/// 1e-10 on hermiticity/trace, 1e-10 on positivity).
SingleParticleDiag diagonalize_single_particle(const Eigen::Matrix2cd& rho);

}  // namespace jspin
