#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "jspin/half_int.hpp"

namespace jspin {

using BigInt = boost::multiprecision::cpp_int;

/// ln C(n,k). Throws std::domain_error unless 0 <= k <= n.
double log_binomial(int n, int k);

/// Exact binomial coefficient.
BigInt binomial(int n, int k);

/// Number of ways to place m indistinguishable balls into n urns with at most
/// k balls per urn. Evaluated through the recursion
///   C(n,m)_k = sum_{i=0..k} C(n-1,m-i)_k,
/// with the (n,m) table memoized per k. Zero outside 0 <= m <= n*k.
/// Throws std::domain_error for negative n or k.
BigInt gen_binomial(int n, int m, int k);

/// Coefficients of (1 + t + ... + t^k)^n for m = 0..n*k, computed by
/// polynomial exponentiation of the generating function. Serves as an
/// independent route against gen_binomial.
std::vector<BigInt> gen_binomial_row(int n, int k);

/// Number of distinct multiplets with total spin j for n spin-s particles.
struct Degeneracy {
  int n = 0;
  HalfInt s;
  HalfInt j;
  BigInt count;
};

/// D_j^{(s)}. For s = 1/2 uses the closed form (2j+1)/(j0+j+1) C(2j0, j0+j);
/// otherwise the generalized-binomial difference
///   C(n, j0+j)_{2s} - C(n, j0+j+1)_{2s},  j0 = n s.
/// Illegal j (out of range or wrong parity) yields count 0. Throws
/// std::domain_error for n < 1 or s < 1/2.
Degeneracy degeneracy(int n, HalfInt s, HalfInt j);

/// ln D_j^{(s)}; -infinity when the count is zero. Stable at sizes where the
/// exact count overflows double.
double log_degeneracy(int n, HalfInt s, HalfInt j);

/// All legal total-spin values for n spin-s particles, descending from n*s
/// down to 0 or 1/2 in unit steps (parity gaps included, even where the
/// degeneracy vanishes).
std::vector<HalfInt> j_grid(int n, HalfInt s);

}  // namespace jspin
