#include "jspin/combinatorics.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace jspin {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// ln of a positive big integer; splits off high bits when the value does not
// fit a double.
double log_big(const BigInt& v) {
  if (v <= 0) {
    return kNegInf;
  }
  const auto bits = boost::multiprecision::msb(v);
  if (bits <= 960) {
    return std::log(v.convert_to<double>());
  }
  const unsigned shift = bits - 900;
  const BigInt scaled = v >> shift;
  return std::log(scaled.convert_to<double>()) + static_cast<double>(shift) * std::numbers::ln2;
}

std::vector<BigInt> poly_mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  std::vector<BigInt> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t k = 0; k < b.size(); ++k) {
      out[i + k] += a[i] * b[k];
    }
  }
  return out;
}

// Memoized gen-binomial tables, one triangle of rows per k.
class GenBinomialCache {
 public:
  BigInt lookup(int n, int m, int k) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto& rows = tables_[k];
    if (rows.empty()) {
      rows.push_back({BigInt(1)});  // n = 0: empty product, coefficient of t^0
    }
    while (static_cast<int>(rows.size()) <= n) {
      const auto& prev = rows.back();
      const int nn = static_cast<int>(rows.size());
      std::vector<BigInt> row(static_cast<std::size_t>(nn) * k + 1);
      for (int mm = 0; mm < static_cast<int>(row.size()); ++mm) {
        BigInt acc = 0;
        for (int i = 0; i <= k; ++i) {
          const int idx = mm - i;
          if (idx >= 0 && idx < static_cast<int>(prev.size())) {
            acc += prev[idx];
          }
        }
        row[mm] = acc;
      }
      rows.push_back(std::move(row));
    }
    const auto& row = rows[n];
    if (m < 0 || m >= static_cast<int>(row.size())) {
      return 0;
    }
    return row[m];
  }

 private:
  std::mutex mutex_;
  std::map<int, std::vector<std::vector<BigInt>>> tables_;
};

GenBinomialCache& gen_binomial_cache() {
  static GenBinomialCache cache;
  return cache;
}

}  // namespace

double log_binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) {
    throw std::domain_error("log_binomial: requires 0 <= k <= n");
  }
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

BigInt binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) {
    return 0;
  }
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // exact at every step
  }
  return r;
}

BigInt gen_binomial(int n, int m, int k) {
  if (n < 0 || k < 0) {
    throw std::domain_error("gen_binomial: requires n >= 0 and k >= 0");
  }
  if (m < 0 || m > static_cast<long long>(n) * k) {
    return 0;
  }
  if (k == 0) {
    return m == 0 ? 1 : 0;
  }
  return gen_binomial_cache().lookup(n, m, k);
}

std::vector<BigInt> gen_binomial_row(int n, int k) {
  if (n < 0 || k < 0) {
    throw std::domain_error("gen_binomial_row: requires n >= 0 and k >= 0");
  }
  std::vector<BigInt> result{BigInt(1)};
  std::vector<BigInt> base(static_cast<std::size_t>(k) + 1, BigInt(1));
  int e = n;
  while (e > 0) {
    if (e & 1) {
      result = poly_mul(result, base);
    }
    e >>= 1;
    if (e > 0) {
      base = poly_mul(base, base);
    }
  }
  result.resize(static_cast<std::size_t>(n) * k + 1, BigInt(0));
  return result;
}

Degeneracy degeneracy(int n, HalfInt s, HalfInt j) {
  if (n < 1 || s.twice() < 1) {
    throw std::domain_error("degeneracy: requires n >= 1 and s >= 1/2");
  }
  Degeneracy d{n, s, j, BigInt(0)};
  const HalfInt j0 = n * s;
  if (j.twice() < 0 || j > j0 || (j0.twice() - j.twice()) % 2 != 0) {
    return d;  // illegal j: zero count, not an error
  }
  const int a = (j0 + j).twice() / 2;  // j0 + j is an integer for legal j
  if (s.twice() == 1) {
    // (2j+1)/(j0+j+1) C(2j0, j0+j); the division is exact.
    d.count = binomial(n, a) * (j.twice() + 1) / (a + 1);
  } else {
    d.count = gen_binomial(n, a, s.twice()) - gen_binomial(n, a + 1, s.twice());
  }
  return d;
}

double log_degeneracy(int n, HalfInt s, HalfInt j) {
  if (n < 1 || s.twice() < 1) {
    throw std::domain_error("log_degeneracy: requires n >= 1 and s >= 1/2");
  }
  const HalfInt j0 = n * s;
  if (j.twice() < 0 || j > j0 || (j0.twice() - j.twice()) % 2 != 0) {
    return kNegInf;
  }
  if (s.twice() == 1) {
    const int a = (j0 + j).twice() / 2;
    return std::log(j.twice() + 1.0) - std::log(a + 1.0) + log_binomial(n, a);
  }
  return log_big(degeneracy(n, s, j).count);
}

std::vector<HalfInt> j_grid(int n, HalfInt s) {
  if (n < 1 || s.twice() < 1) {
    throw std::domain_error("j_grid: requires n >= 1 and s >= 1/2");
  }
  std::vector<HalfInt> out;
  const int top = n * s.twice();
  for (int t = top; t >= (top % 2); t -= 2) {
    out.push_back(HalfInt::from_twice(t));
  }
  return out;
}

}  // namespace jspin
