#include "jspin/clebsch_gordan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <unordered_map>

namespace jspin {

namespace {

double log_factorial(int k) { return std::lgamma(k + 1.0); }

// Six doubled quantum numbers packed into one key; valid for |twice| < 512,
// which covers every size this library constructs.
bool pack_key(const int t[6], std::uint64_t* key) {
  std::uint64_t k = 0;
  for (int i = 0; i < 6; ++i) {
    if (t[i] <= -512 || t[i] >= 512) {
      return false;
    }
    k = (k << 10) | static_cast<std::uint64_t>(t[i] + 512);
  }
  *key = k;
  return true;
}

double racah_sum(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M) {
  // All of these are non-negative integers once the selection rules hold.
  const int a1 = (j1 + j2 - J).twice() / 2;
  const int a2 = (j1 - j2 + J).twice() / 2;
  const int a3 = (-j1 + j2 + J).twice() / 2;
  const int a4 = (j1 + j2 + J).twice() / 2 + 1;
  const int b1 = (j1 + m1).twice() / 2;
  const int b2 = (j1 - m1).twice() / 2;
  const int b3 = (j2 + m2).twice() / 2;
  const int b4 = (j2 - m2).twice() / 2;
  const int b5 = (J + M).twice() / 2;
  const int b6 = (J - M).twice() / 2;
  const int c1 = (J - j2 + m1).twice() / 2;
  const int c2 = (J - j1 - m2).twice() / 2;

  const double log_pref =
      0.5 * (std::log(J.twice() + 1.0) + log_factorial(a1) + log_factorial(a2) +
             log_factorial(a3) - log_factorial(a4) + log_factorial(b1) + log_factorial(b2) +
             log_factorial(b3) + log_factorial(b4) + log_factorial(b5) + log_factorial(b6));

  const int k_lo = std::max({0, -c1, -c2});
  const int k_hi = std::min({a1, b2, b3});
  double sum = 0.0;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double log_den = log_factorial(k) + log_factorial(a1 - k) + log_factorial(b2 - k) +
                           log_factorial(b3 - k) + log_factorial(c1 + k) + log_factorial(c2 + k);
    const double term = std::exp(log_pref - log_den);
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum;
}

}  // namespace

double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M) {
  if (m1 + m2 != M) {
    return 0.0;
  }
  if (!valid_projection(j1, m1) || !valid_projection(j2, m2) || !valid_projection(J, M)) {
    return 0.0;
  }
  // Triangle rule, including the integer-perimeter requirement.
  if ((j1 + j2 + J).twice() % 2 != 0) {
    return 0.0;
  }
  if (J > j1 + j2 || J.twice() < std::abs(j1.twice() - j2.twice())) {
    return 0.0;
  }

  static std::mutex mutex;
  static std::unordered_map<std::uint64_t, double> memo;

  const int t[6] = {j1.twice(), m1.twice(), j2.twice(), m2.twice(), J.twice(), M.twice()};
  std::uint64_t key = 0;
  const bool cacheable = pack_key(t, &key);
  if (cacheable) {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = memo.find(key);
    if (it != memo.end()) {
      return it->second;
    }
  }

  const double value = racah_sum(j1, m1, j2, m2, J, M);

  if (cacheable) {
    std::lock_guard<std::mutex> lock(mutex);
    memo.emplace(key, value);
  }
  return value;
}

}  // namespace jspin
