#pragma once

#include <Eigen/Dense>

#include "jspin/half_int.hpp"

namespace jspin {

/// Dense angular-momentum matrices on a single j-block in the |j,m> basis,
/// m descending from j to -j.
struct JOperators {
  HalfInt j;
  Eigen::MatrixXcd jz;
  Eigen::MatrixXcd jplus;
  Eigen::MatrixXcd jminus;
  Eigen::MatrixXcd jx;
  Eigen::MatrixXcd jy;
  double j_squared = 0.0;  // eigenvalue of J^2; the matrix is j_squared * I
};

JOperators j_operators(HalfInt j);

/// m values j, j-1, ..., -j as doubles (the basis ordering used everywhere).
Eigen::VectorXd m_values(HalfInt j);

}  // namespace jspin
