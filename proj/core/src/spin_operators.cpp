#include "jspin/spin_operators.hpp"

#include <cmath>
#include <complex>

namespace jspin {

Eigen::VectorXd m_values(HalfInt j) {
  const int d = multiplicity(j);
  Eigen::VectorXd m(d);
  for (int i = 0; i < d; ++i) {
    m[i] = 0.5 * (j.twice() - 2 * i);
  }
  return m;
}

JOperators j_operators(HalfInt j) {
  const int d = multiplicity(j);
  const double jj = j_squared_eigenvalue(j);
  JOperators ops;
  ops.j = j;
  ops.j_squared = jj;
  ops.jz = Eigen::MatrixXcd::Zero(d, d);
  ops.jplus = Eigen::MatrixXcd::Zero(d, d);
  ops.jminus = Eigen::MatrixXcd::Zero(d, d);

  const Eigen::VectorXd m = m_values(j);
  for (int i = 0; i < d; ++i) {
    ops.jz(i, i) = m[i];
  }
  // J+ |j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>; row i-1 holds m+1 in the
  // descending ordering.
  for (int i = 1; i < d; ++i) {
    ops.jplus(i - 1, i) = std::sqrt(jj - m[i] * (m[i] + 1.0));
  }
  for (int i = 0; i + 1 < d; ++i) {
    ops.jminus(i + 1, i) = std::sqrt(jj - m[i] * (m[i] - 1.0));
  }
  ops.jx = 0.5 * (ops.jplus + ops.jminus);
  ops.jy = std::complex<double>(0.0, -0.5) * (ops.jplus - ops.jminus);
  return ops;
}

}  // namespace jspin
