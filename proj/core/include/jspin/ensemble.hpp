#pragma once

#include <utility>
#include <vector>

#include "jspin/block_state.hpp"

namespace jspin {

/// Reduced collective state of n spin-1/2 particles with single-particle
/// polarization p: populations D_j^{(1/2)} p^{j0+m} (1-p)^{j0-m}, evaluated
/// in log space. Throws std::domain_error unless 0 <= p <= 1 and n >= 1.
BlockState reduced_halfspin(int n, double p);

/// Marginal j-distribution p_j = sum_m p_{j,m}, by direct summation.
std::vector<std::pair<HalfInt, double>> marginal_j(const BlockState& state);

/// Binomial approximation to the marginal j-distribution, valid for p above
/// 1/2 + 1/sqrt(8 j0); `valid` reports that condition.
struct MarginalApprox {
  std::vector<std::pair<HalfInt, double>> values;
  bool valid = false;
};

/// Throws std::domain_error unless p > 1/2.
MarginalApprox marginal_j_approx(int n, double p);

/// Total population of the maximal multiplet j = j0, by the stable finite
/// sum over m (exact at p = 1/2 where the closed-form ratio is singular).
double dicke_population(int n, double p);

/// Closed-form moments for a diagonal spin-1/2 product state:
///   mean_z = n(p - 1/2), var_x = var_y = j0/2, var_z = 2p(1-p) j0,
///   j_squared = (2p-1)^2 j0(j0+1) + 6p(1-p) j0.
/// Throws std::invalid_argument unless spec.s == 1/2.
Moments moments_closed_form(const EnsembleSpec& spec);

/// Moments evaluated from block data; uses per-block operator matrices when
/// a block carries m-coherences.
Moments moments_from_state(const BlockState& state);

/// Reduced collective state for any spin s by the sequential coupling
/// recursion on the diagonal elements; the final coupling step also produces
/// the j-coherence bands with 0 < |dj| <= 2s. For s = 1/2 the output carries
/// no bands and equals reduced_halfspin.
BlockState reduced_general(const EnsembleSpec& spec);

/// Reduced state for the thermal single-particle distribution
/// p_{m_s} = e^{-beta m_s}/Z: populations D_j^{(s)} Z^{-n} e^{-beta m}.
BlockState thermal_reduced(int n, HalfInt s, double beta);

}  // namespace jspin
