#include "jspin/squeezing.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "jspin/ensemble.hpp"
#include "jspin/spin_operators.hpp"

namespace jspin {

namespace {

double ipow(double base, int e) {
  if (e < 0) {
    return 1.0 / ipow(base, -e);
  }
  double r = 1.0;
  double b = base;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

void require_diagonal(const BlockState& state, const char* who) {
  if (state.has_dense() || !state.bands.empty()) {
    throw std::invalid_argument(std::string(who) + ": input must be diagonal and band-free");
  }
}

// U rho U^dagger with U = exp(-i angle G) for a Hermitian generator G,
// rho the diagonal block populations.
Eigen::MatrixXcd evolve_block(const Eigen::VectorXd& populations, const Eigen::MatrixXcd& gen,
                              double angle) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gen);
  const Eigen::VectorXd& w = es.eigenvalues();
  const Eigen::MatrixXcd& v = es.eigenvectors();
  Eigen::VectorXcd phases(w.size());
  for (int i = 0; i < w.size(); ++i) {
    phases[i] = std::polar(1.0, -angle * w[i]);
  }
  const Eigen::MatrixXcd u = v * phases.asDiagonal() * v.adjoint();
  return u * populations.cast<std::complex<double>>().asDiagonal() * u.adjoint();
}

BlockState evolve_all_blocks(const BlockState& state,
                             Eigen::MatrixXcd (*generator)(const JOperators&), double angle) {
  BlockState out = state;
  for (auto& b : out.blocks) {
    if (b.dim() == 1) {
      continue;  // 1x1 blocks pick up only a global phase
    }
    const JOperators ops = j_operators(b.j);
    Eigen::MatrixXcd rho = evolve_block(b.populations, generator(ops), angle);
    for (int i = 0; i < b.dim(); ++i) {
      b.populations[i] = rho(i, i).real();
    }
    b.dense = std::move(rho);
  }
  return out;
}

Eigen::MatrixXcd twist_generator(const JOperators& ops) { return ops.jy * ops.jy; }

Eigen::MatrixXcd countertwist_generator(const JOperators& ops) {
  return std::complex<double>(0.0, -0.5) * (ops.jplus * ops.jplus - ops.jminus * ops.jminus);
}

struct SecondMoments {
  double ex = 0.0, ey = 0.0;
  double exx = 0.0, eyy = 0.0, exy = 0.0;  // exy is the symmetrized cross moment
  double mass = 0.0;
};

SecondMoments block_moments(const BlockState::Block& b) {
  SecondMoments sm;
  sm.mass = b.mass();
  if (b.dense) {
    const JOperators ops = j_operators(b.j);
    const Eigen::MatrixXcd& rho = *b.dense;
    sm.ex = (rho * ops.jx).trace().real();
    sm.ey = (rho * ops.jy).trace().real();
    sm.exx = (rho * ops.jx * ops.jx).trace().real();
    sm.eyy = (rho * ops.jy * ops.jy).trace().real();
    sm.exy = 0.5 * (rho * (ops.jx * ops.jy + ops.jy * ops.jx)).trace().real();
  } else {
    const double jj = j_squared_eigenvalue(b.j);
    const Eigen::VectorXd m = m_values(b.j);
    for (int i = 0; i < b.dim(); ++i) {
      const double t = 0.5 * b.populations[i] * (jj - m[i] * m[i]);
      sm.exx += t;
      sm.eyy += t;
    }
  }
  return sm;
}

CovarianceEllipse ellipse_from_cov(double cxx, double cyy, double cxy) {
  CovarianceEllipse e;
  const double tr = cxx + cyy;
  const double disc = std::sqrt((cxx - cyy) * (cxx - cyy) + 4.0 * cxy * cxy);
  e.var_major = 0.5 * (tr + disc);
  e.var_minor = 0.5 * (tr - disc);
  const double angle_major = 0.5 * std::atan2(2.0 * cxy, cxx - cyy);
  double a = angle_major + 0.5 * std::numbers::pi;
  a = std::fmod(a, std::numbers::pi);
  if (a < 0) a += std::numbers::pi;
  e.angle_minor = a;
  return e;
}

double analytic_var_real_j(double j, double mu) {
  const double a = 1.0 - std::pow(std::cos(mu), 2.0 * j - 2.0);
  const double b = 4.0 * std::sin(0.5 * mu) * std::pow(std::cos(0.5 * mu), 2.0 * j - 2.0);
  return 0.5 * j * (1.0 - 0.25 * (2.0 * j - 1.0) * (std::sqrt(a * a + b * b) - a));
}

// Golden-section minimum; strict comparison keeps the left interval on ties,
// biasing toward smaller mu.
template <typename F>
double golden_min(F f, double lo, double hi) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

BlockState one_axis_evolve(const BlockState& state, double mu) {
  require_diagonal(state, "one_axis_evolve");
  return evolve_all_blocks(state, &twist_generator, 0.5 * mu);
}

TwistAnalytic one_axis_analytic(HalfInt j, double mu) {
  if (j.twice() < 1) {
    throw std::domain_error("one_axis_analytic: requires j >= 1/2");
  }
  TwistAnalytic out;
  out.j = j;
  const int e = j.twice() - 2;  // 2j - 2, an integer for half-integer j
  out.a = 1.0 - ipow(std::cos(mu), e);
  out.b = 4.0 * std::sin(0.5 * mu) * ipow(std::cos(0.5 * mu), e);
  out.theta = 0.5 * std::atan2(out.b, out.a);
  const double jv = j.value();
  // The (2j-1) factor removes the bracket at j = 1/2; skip it there so the
  // negative-exponent powers in A, B cannot poison the result.
  double reduction = 0.0;
  if (j.twice() > 1) {
    reduction = 0.25 * (2.0 * jv - 1.0) * (std::hypot(out.a, out.b) - out.a);
  }
  out.var_theta = 0.5 * jv * (1.0 - reduction);
  return out;
}

CovarianceEllipse covariance_ellipse(const BlockState& state) {
  SecondMoments tot;
  for (const auto& b : state.blocks) {
    const SecondMoments sm = block_moments(b);
    tot.ex += sm.ex;
    tot.ey += sm.ey;
    tot.exx += sm.exx;
    tot.eyy += sm.eyy;
    tot.exy += sm.exy;
  }
  return ellipse_from_cov(tot.exx - tot.ex * tot.ex, tot.eyy - tot.ey * tot.ey,
                          tot.exy - tot.ex * tot.ey);
}

std::vector<BlockEllipse> block_covariance_ellipses(const BlockState& state) {
  std::vector<BlockEllipse> out;
  out.reserve(state.blocks.size());
  for (const auto& b : state.blocks) {
    const SecondMoments sm = block_moments(b);
    BlockEllipse be;
    be.j = b.j;
    be.mass = sm.mass;
    if (sm.mass > 0.0) {
      be.ellipse = ellipse_from_cov(sm.exx - sm.ex * sm.ex / sm.mass,
                                    sm.eyy - sm.ey * sm.ey / sm.mass,
                                    sm.exy - sm.ex * sm.ey / sm.mass);
    }
    out.push_back(be);
  }
  return out;
}

double optimal_mu(HalfInt j) {
  if (j.twice() < 2) {
    throw std::domain_error("optimal_mu: requires j >= 1");
  }
  return golden_min([j](double mu) { return one_axis_analytic(j, mu).var_theta; }, 1e-9,
                    std::numbers::pi);
}

double optimal_mu_real(double j) {
  if (j < 1.0) {
    throw std::domain_error("optimal_mu_real: requires j >= 1");
  }
  // Half-integral j delegates to the exact-exponent path so the two routes
  // agree bit-for-bit where their domains overlap (e.g. j_c = j0 at p = 1).
  const double twice = 2.0 * j;
  if (std::abs(twice - std::round(twice)) < 1e-12) {
    return optimal_mu(HalfInt::from_twice(static_cast<int>(std::lround(twice))));
  }
  // cos^{2j-2} is only defined for mu < pi/2 at non-integer exponents.
  return golden_min([j](double mu) { return analytic_var_real_j(j, mu); }, 1e-9,
                    0.5 * std::numbers::pi - 1e-9);
}

MuSpread optimal_mu_spread(int n, double p) {
  if (!(p > 0.5)) {
    throw std::domain_error("optimal_mu_spread: requires p > 1/2");
  }
  if (!(p <= 1.0)) {
    throw std::domain_error("optimal_mu_spread: requires p <= 1");
  }
  const double j0 = 0.5 * n;
  const double jc = (2.0 * p - 1.0) * j0;
  const double sigma = std::sqrt(2.0 * p * (1.0 - p) * j0);
  if (jc - sigma < 1.0) {
    throw std::domain_error("optimal_mu_spread: j-distribution too wide (p too far from 1)");
  }
  MuSpread out;
  out.estimate = -std::sqrt((1.0 - p) / j0);
  out.mu_center = optimal_mu_real(jc);
  if (sigma == 0.0) {
    out.measured = 0.0;
  } else {
    out.measured = (optimal_mu_real(jc + sigma) - optimal_mu_real(jc - sigma)) / out.mu_center;
  }
  return out;
}

double countertwist_hp_variance(const BlockState& state, double lambda) {
  if (state.has_dense()) {
    throw std::invalid_argument("countertwist_hp_variance: input must be diagonal in m");
  }
  double total = 0.0;
  for (const auto& b : state.blocks) {
    const double jv = b.j.value();
    const double jj = j_squared_eigenvalue(b.j);
    const double damp = std::exp(-lambda * jv);
    const Eigen::VectorXd m = m_values(b.j);
    double acc = 0.0;
    for (int i = 0; i < b.dim(); ++i) {
      acc += b.populations[i] * 0.5 * (jj - m[i] * m[i]);
    }
    total += acc * damp;
  }
  return total;
}

double countertwist_closed_form(int n, double p, double lambda) {
  if (!(p > 0.5 && p <= 1.0)) {
    throw std::domain_error("countertwist_closed_form: requires 1/2 < p <= 1");
  }
  const double j0 = 0.5 * n;
  const double p_lambda = p / (1.0 + std::expm1(lambda) * (1.0 - p));
  const double ratio = (2.0 * p_lambda - 1.0) / (2.0 * p - 1.0);
  // (p/p_lambda)^{2 j0 + 1} in log space; p/p_lambda = 1 + expm1(lambda)(1-p).
  const double log_pp = std::log1p(std::expm1(lambda) * (1.0 - p));
  return std::exp(-lambda * j0 + (2.0 * j0 + 1.0) * log_pp) * 0.5 * j0 * ratio * ratio;
}

double countertwist_first_order(int n, double p, double lambda) {
  const double j0 = 0.5 * n;
  return 0.5 * j0 * std::exp(-lambda * j0) *
         (1.0 + std::expm1(lambda) * (2.0 * j0 - 3.0) * (1.0 - p));
}

double pure_squeeze_factor(int n, double lambda) { return std::exp(0.25 * lambda * n); }

RamseyMetrics ramsey_xi(int n, double p, double lambda) {
  const double j0 = 0.5 * n;
  RamseyMetrics out;
  out.s0 = pure_squeeze_factor(n, lambda);
  const BlockState state = reduced_halfspin(n, p);
  const double var = countertwist_hp_variance(state, lambda);
  // <Jz> cancels between numerator and denominator at first order in lambda,
  // so xi reduces to the ratio of transverse spreads.
  out.xi_r = std::sqrt(var / (0.5 * j0));
  out.xi_r_first_order = (1.0 + 2.0 * (1.0 - p) * std::log(out.s0)) / out.s0;
  return out;
}

BlockState countertwist_exact_evolve(const BlockState& state, double lambda) {
  require_diagonal(state, "countertwist_exact_evolve");
  return evolve_all_blocks(state, &countertwist_generator, 0.25 * lambda);
}

}  // namespace jspin
