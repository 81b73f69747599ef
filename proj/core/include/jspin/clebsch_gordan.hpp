#pragma once

#include "jspin/half_int.hpp"

namespace jspin {

struct CgKey {
  HalfInt j1, m1, j2, m2, J, M;
};

/// Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> in the Condon-Shortley
/// convention (all coefficients real, <j1 j1; j2 J-j1 | J J> > 0).
/// Evaluated by the Racah finite sum with log-factorials; memoized.
/// Returns 0 for violated selection rules (M != m1+m2, triangle, parity,
/// |m| > j).
double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M);

inline double clebsch_gordan(const CgKey& k) {
  return clebsch_gordan(k.j1, k.m1, k.j2, k.m2, k.J, k.M);
}

}  // namespace jspin
