#pragma once

#include <vector>

#include "jspin/block_state.hpp"

namespace jspin {

/// Dimensionless interaction strengths: mu = 2 chi t for the one-axis twist,
/// lambda = 4 chi t for the two-axis countertwist.
struct SqueezeParams {
  double mu = 0.0;
  double lambda = 0.0;
};

/// Closed-form one-axis twist quantities for an initial pure |j, m=j> state:
///   A = 1 - cos^{2j-2} mu,  B = 4 sin(mu/2) cos^{2j-2}(mu/2),
///   theta = (1/2) arctan(B/A),
///   var_theta = (j/2) (1 - (2j-1)/4 [sqrt(A^2+B^2) - A]).
/// var_theta is the minimal transverse variance; the squeezed direction in
/// the xy-plane makes angle theta + pi/2 with the x-axis.
struct TwistAnalytic {
  HalfInt j;
  double a = 0.0;
  double b = 0.0;
  double theta = 0.0;
  double var_theta = 0.0;
};

/// Principal-axis summary of the 2x2 transverse-spin covariance.
/// angle_minor is the direction of minimal variance in the xy-plane,
/// measured from +x, normalized to [0, pi).
struct CovarianceEllipse {
  double var_minor = 0.0;
  double var_major = 0.0;
  double angle_minor = 0.0;
};

struct BlockEllipse {
  HalfInt j;
  double mass = 0.0;
  CovarianceEllipse ellipse;  // mass-weighted second moments of the block
};

struct RamseyMetrics {
  double s0 = 1.0;                 // pure-state squeezing factor e^{lambda j0 / 2}
  double xi_r = 1.0;               // numeric frequency-uncertainty ratio
  double xi_r_first_order = 1.0;   // (1/s0)(1 + 2(1-p) ln s0)
};

struct MuSpread {
  double estimate = 0.0;   // -sqrt((1-p)/j0)
  double measured = 0.0;   // [mu0(j_c+sigma) - mu0(j_c-sigma)] / mu0(j_c)
  double mu_center = 0.0;  // mu0(j_c)
};

/// One-axis twist about y: each block evolves as U rho_j U^dagger with
/// U = exp(-i (mu/2) Jy^2). Input must be diagonal in m and band-free.
BlockState one_axis_evolve(const BlockState& state, double mu);

/// Throws std::domain_error for j < 1/2.
TwistAnalytic one_axis_analytic(HalfInt j, double mu);

/// Transverse covariance summed over blocks (first moments included, not
/// assumed zero).
CovarianceEllipse covariance_ellipse(const BlockState& state);

/// Per-block ellipses from mass-weighted second moments, j descending.
std::vector<BlockEllipse> block_covariance_ellipses(const BlockState& state);

/// Optimal mu minimizing the analytic variance, golden-section over (0, pi);
/// ties resolved toward smaller mu. Throws std::domain_error for j < 1.
double optimal_mu(HalfInt j);

/// Same minimization with real-valued j (used at j = j_c, which is generally
/// not a legal half-integer); search restricted to (0, pi/2).
double optimal_mu_real(double j);

/// Relative variation of the optimal mu across the j-distribution of
/// reduced_halfspin(n, p). Throws std::domain_error unless p > 1/2.
MuSpread optimal_mu_spread(int n, double p);

/// Holstein-Primakoff variance of the squeezed component after a two-axis
/// countertwist: sum_{j,m} p_{j,m} (1/2)(j(j+1) - m^2) e^{-lambda j}.
/// Input must be diagonal in m.
double countertwist_hp_variance(const BlockState& state, double lambda);

/// Delta-peak closed form with p_lambda = p / (1 + (e^lambda - 1)(1-p)).
/// Throws std::domain_error unless p > 1/2.
double countertwist_closed_form(int n, double p, double lambda);

/// First-order form (j0/2) e^{-lambda j0} (1 + (e^lambda - 1)(2 j0 - 3)(1-p)).
double countertwist_first_order(int n, double p, double lambda);

/// e^{lambda j0 / 2}
double pure_squeeze_factor(int n, double lambda);

/// Ramsey frequency-uncertainty ratio: numeric xi_R from the HP variance sum
/// with the unsqueezed <Jz>, plus the first-order closed form.
RamseyMetrics ramsey_xi(int n, double p, double lambda);

/// Exact per-block countertwist evolution U = exp(-i (lambda/4) G) with
/// G = (J+^2 - J-^2)/(2i). Input must be diagonal in m and band-free.
BlockState countertwist_exact_evolve(const BlockState& state, double lambda);

}  // namespace jspin
