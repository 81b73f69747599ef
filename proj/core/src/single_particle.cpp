#include "jspin/single_particle.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace jspin {

SingleParticleDiag diagonalize_single_particle(const Eigen::Matrix2cd& rho) {
  constexpr double kTol = 1e-10;
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kTol) {
    throw std::invalid_argument("diagonalize_single_particle: not Hermitian");
  }
  if (std::abs(rho.trace() - std::complex<double>(1.0, 0.0)) > kTol) {
    throw std::invalid_argument("diagonalize_single_particle: trace != 1");
  }

  SingleParticleDiag out;
  out.bloch[0] = 2.0 * rho(0, 1).real();
  out.bloch[1] = -2.0 * rho(0, 1).imag();
  out.bloch[2] = rho(0, 0).real() - rho(1, 1).real();
  const double r = out.bloch.norm();
  if (r > 1.0 + kTol) {
    throw std::invalid_argument("diagonalize_single_particle: not positive semidefinite");
  }

  out.p = 0.5 * (1.0 + std::min(r, 1.0));
  if (r < 1e-14) {
    out.basis = Eigen::Matrix2cd::Identity();  // degenerate: any rotation works
    return out;
  }

  // Spinor along the Bloch direction (theta, phi).
  const double theta = std::acos(std::clamp(out.bloch[2] / r, -1.0, 1.0));
  const double phi = std::atan2(out.bloch[1], out.bloch[0]);
  const double c = std::cos(0.5 * theta);
  const double sn = std::sin(0.5 * theta);
  const std::complex<double> eip = std::polar(1.0, phi);
  out.basis(0, 0) = c;
  out.basis(1, 0) = sn * eip;
  out.basis(0, 1) = -sn / eip;
  out.basis(1, 1) = c;
  return out;
}

}  // namespace jspin
