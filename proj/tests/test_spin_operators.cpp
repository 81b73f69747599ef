#include "jspin/spin_operators.hpp"

#include <complex>

#include "doctest.h"

using jspin::HalfInt;
using jspin::j_operators;

namespace {
const std::complex<double> kI(0.0, 1.0);
}

TEST_CASE("spin-1/2 block is Pauli/2") {
  const auto ops = j_operators(HalfInt::half());
  CHECK(ops.jz(0, 0).real() == doctest::Approx(0.5));
  CHECK(ops.jz(1, 1).real() == doctest::Approx(-0.5));
  CHECK(ops.jx(0, 1).real() == doctest::Approx(0.5));
  CHECK(ops.jy(0, 1).imag() == doctest::Approx(-0.5));
  CHECK(ops.j_squared == doctest::Approx(0.75));
}

TEST_CASE("ladder element at j = 1") {
  const auto ops = j_operators(HalfInt(1));
  // <m'=1| J+ |m=0>: row 0, column 1 in the descending ordering.
  CHECK(ops.jplus(0, 1).real() == doctest::Approx(std::sqrt(2.0)));
  CHECK(ops.jminus(1, 0).real() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("commutation and Casimir identities") {
  for (int twice_j : {1, 2, 3, 7, 10}) {
    const auto ops = j_operators(HalfInt::from_twice(twice_j));
    const Eigen::MatrixXcd comm = ops.jx * ops.jy - ops.jy * ops.jx - kI * ops.jz;
    CHECK(comm.cwiseAbs().maxCoeff() < 1e-12);

    const Eigen::MatrixXcd j2 = ops.jx * ops.jx + ops.jy * ops.jy + ops.jz * ops.jz;
    const Eigen::MatrixXcd expected =
        ops.j_squared * Eigen::MatrixXcd::Identity(j2.rows(), j2.cols());
    CHECK((j2 - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("ladder identities") {
  for (int twice_j : {1, 4, 9}) {
    const auto ops = j_operators(HalfInt::from_twice(twice_j));
    // [Jz, J+] = J+ and J- J+ = J^2 - Jz^2 - Jz.
    const Eigen::MatrixXcd c1 = ops.jz * ops.jplus - ops.jplus * ops.jz - ops.jplus;
    CHECK(c1.cwiseAbs().maxCoeff() < 1e-14 * (twice_j + 1));
    const Eigen::MatrixXcd lhs = ops.jminus * ops.jplus;
    const Eigen::MatrixXcd rhs =
        ops.j_squared * Eigen::MatrixXcd::Identity(lhs.rows(), lhs.cols()) -
        ops.jz * ops.jz - ops.jz;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13 * (twice_j + 1));
  }
}

TEST_CASE("large blocks stay numerically tight") {
  // Block sizes used by ensembles with n in the hundreds.
  const auto ops = j_operators(HalfInt::from_twice(301));
  const Eigen::MatrixXcd comm = ops.jx * ops.jy - ops.jy * ops.jx - kI * ops.jz;
  CHECK(comm.cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("transverse operators are Hermitian") {
  const auto ops = j_operators(HalfInt::from_twice(5));
  CHECK((ops.jx - ops.jx.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((ops.jy - ops.jy.adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("m_values descend from j to -j") {
  const auto m = jspin::m_values(HalfInt::from_twice(3));
  REQUIRE(m.size() == 4);
  CHECK(m[0] == doctest::Approx(1.5));
  CHECK(m[3] == doctest::Approx(-1.5));
}
