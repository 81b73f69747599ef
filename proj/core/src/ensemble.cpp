#include "jspin/ensemble.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "jspin/clebsch_gordan.hpp"
#include "jspin/combinatorics.hpp"
#include "jspin/spin_operators.hpp"

namespace jspin {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// exponent * ln(base) with the 0^0 = 1 convention: a zero exponent
// contributes nothing even when the base is zero.
double exponent_log(double base, int exponent) {
  if (exponent == 0) {
    return 0.0;
  }
  if (base <= 0.0) {
    return kNegInf;
  }
  return exponent * std::log(base);
}

double exp_or_zero(double log_value) {
  return log_value == kNegInf ? 0.0 : std::exp(log_value);
}

}  // namespace

BlockState reduced_halfspin(int n, double p) {
  if (n < 1) {
    throw std::domain_error("reduced_halfspin: n must be >= 1");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("reduced_halfspin: p must lie in [0, 1]");
  }
  BlockState st = BlockState::zeros(n, HalfInt::half());
  for (auto& b : st.blocks) {
    const double log_d = log_degeneracy(n, HalfInt::half(), b.j);
    const int d = b.dim();
    for (int i = 0; i < d; ++i) {
      // m = j - i; exponents j0 +- m are integers for spin 1/2.
      const int up = (n + b.j.twice()) / 2 - i;    // j0 + m
      const int down = (n - b.j.twice()) / 2 + i;  // j0 - m
      b.populations[i] =
          exp_or_zero(log_d + exponent_log(p, up) + exponent_log(1.0 - p, down));
    }
  }
  return st;
}

std::vector<std::pair<HalfInt, double>> marginal_j(const BlockState& state) {
  std::vector<std::pair<HalfInt, double>> out;
  out.reserve(state.blocks.size());
  for (const auto& b : state.blocks) {
    out.emplace_back(b.j, b.mass());
  }
  return out;
}

MarginalApprox marginal_j_approx(int n, double p) {
  if (n < 1) {
    throw std::domain_error("marginal_j_approx: n must be >= 1");
  }
  if (!(p > 0.5)) {
    throw std::domain_error("marginal_j_approx: derived for p > 1/2");
  }
  const double j0 = 0.5 * n;
  MarginalApprox out;
  out.valid = (p - 0.5) > 1.0 / std::sqrt(8.0 * j0);
  for (HalfInt j : j_grid(n, HalfInt::half())) {
    const int a = (n + j.twice()) / 2;  // j0 + j
    const double front = std::log(j.twice() + 1.0) - std::log(a + 1.0) + std::log(p) -
                         std::log(2.0 * p - 1.0);
    const double log_val = front + log_binomial(n, a) + exponent_log(p, a) +
                           exponent_log(1.0 - p, n - a);
    out.values.emplace_back(j, exp_or_zero(log_val));
  }
  return out;
}

double dicke_population(int n, double p) {
  if (n < 1) {
    throw std::domain_error("dicke_population: n must be >= 1");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("dicke_population: p must lie in [0, 1]");
  }
  // sum_{m=-j0..j0} p^{j0+m} (1-p)^{j0-m}; finite at p = 1/2 where the
  // closed-form ratio has a removable singularity.
  double total = 0.0;
  for (int k = 0; k <= n; ++k) {
    total += exp_or_zero(exponent_log(p, k) + exponent_log(1.0 - p, n - k));
  }
  return total;
}

Moments moments_closed_form(const EnsembleSpec& spec) {
  spec.validate();
  if (spec.s != HalfInt::half()) {
    throw std::invalid_argument("moments_closed_form: defined for s = 1/2");
  }
  const double p = spec.probs[0];
  const double j0 = 0.5 * spec.n;
  Moments m;
  m.mean_z = spec.n * (p - 0.5);
  m.var_x = 0.5 * j0;
  m.var_y = 0.5 * j0;
  m.var_z = 2.0 * p * (1.0 - p) * j0;
  const double pol = 2.0 * p - 1.0;
  m.j_squared = pol * pol * j0 * (j0 + 1.0) + 6.0 * p * (1.0 - p) * j0;
  return m;
}

Moments moments_from_state(const BlockState& state) {
  double ex = 0.0, ey = 0.0, ez = 0.0;
  double exx = 0.0, eyy = 0.0;
  double ejj = 0.0;
  for (const auto& b : state.blocks) {
    const double jj = j_squared_eigenvalue(b.j);
    ejj += jj * b.mass();
    const Eigen::VectorXd m = m_values(b.j);
    for (int i = 0; i < b.dim(); ++i) {
      ez += b.populations[i] * m[i];
    }
    if (b.dense) {
      const JOperators ops = j_operators(b.j);
      const Eigen::MatrixXcd& rho = *b.dense;
      ex += (rho * ops.jx).trace().real();
      ey += (rho * ops.jy).trace().real();
      exx += (rho * ops.jx * ops.jx).trace().real();
      eyy += (rho * ops.jy * ops.jy).trace().real();
    } else {
      for (int i = 0; i < b.dim(); ++i) {
        // Diagonal elements of Jx^2 and Jy^2 are (j(j+1) - m^2)/2.
        const double t = 0.5 * b.populations[i] * (jj - m[i] * m[i]);
        exx += t;
        eyy += t;
      }
    }
  }
  // Second pass for var_z, centered: <Jz> grows like n while var_z can stay
  // O(1), so the uncentered difference of second moments loses digits.
  double varz = 0.0;
  for (const auto& b : state.blocks) {
    const Eigen::VectorXd m = m_values(b.j);
    for (int i = 0; i < b.dim(); ++i) {
      const double d = m[i] - ez;
      varz += b.populations[i] * d * d;
    }
  }
  Moments out;
  out.mean_z = ez;
  out.var_x = exx - ex * ex;
  out.var_y = eyy - ey * ey;
  out.var_z = varz;
  out.j_squared = ejj;
  return out;
}

BlockState reduced_general(const EnsembleSpec& spec) {
  spec.validate();
  const HalfInt s = spec.s;
  const int two_s = s.twice();

  // Diagonal reduced elements at step k, keyed by (2j); vector over m
  // descending. Step 1 is the single-particle input.
  std::map<int, Eigen::VectorXd, std::greater<int>> current;
  {
    Eigen::VectorXd v(multiplicity(s));
    for (int i = 0; i < multiplicity(s); ++i) {
      v[i] = spec.probs[i];
    }
    current[two_s] = std::move(v);
  }

  BlockState out = BlockState::zeros(spec.n, s);
  if (spec.n == 1) {
    out.block(s)->populations = current[two_s];
    return out;
  }

  std::map<std::pair<int, int>, Eigen::VectorXd> band_acc;  // (2j_hi, 2j_lo) -> values

  for (int k = 1; k < spec.n; ++k) {
    const bool final_step = (k + 1 == spec.n);
    std::map<int, Eigen::VectorXd, std::greater<int>> next;
    for (HalfInt j : j_grid(k + 1, s)) {
      next[j.twice()] = Eigen::VectorXd::Zero(multiplicity(j));
    }

    for (const auto& [two_jk, pops] : current) {
      const HalfInt jk = HalfInt::from_twice(two_jk);
      for (int im = 0; im < pops.size(); ++im) {
        const double pk = pops[im];
        if (pk == 0.0) continue;
        const HalfInt mk = HalfInt::from_twice(two_jk - 2 * im);
        for (int is = 0; is < multiplicity(s); ++is) {
          const double ps = spec.probs[is];
          if (ps == 0.0) continue;
          const HalfInt ms = HalfInt::from_twice(two_s - 2 * is);
          const HalfInt M = mk + ms;
          const double weight = pk * ps;
          const int two_j_lo = std::abs(two_jk - two_s);
          const int two_j_hi = two_jk + two_s;
          for (int two_J = two_j_hi; two_J >= two_j_lo; two_J -= 2) {
            const HalfInt J = HalfInt::from_twice(two_J);
            if (!valid_projection(J, M)) continue;
            const double c = clebsch_gordan(jk, mk, s, ms, J, M);
            if (c == 0.0) continue;
            next[two_J][BlockState::m_index(J, M)] += c * c * weight;
            // The final coupling step also carries coherences between
            // different total j reached from the same intermediate chain;
            // for s = 1/2 the selection rule dj = 0 removes them.
            if (final_step && two_s > 1) {
              for (int two_Jp = two_J + 2; two_Jp <= two_j_hi; two_Jp += 2) {
                const HalfInt Jp = HalfInt::from_twice(two_Jp);
                if (!valid_projection(Jp, M)) continue;
                const double cp = clebsch_gordan(jk, mk, s, ms, Jp, M);
                if (cp == 0.0) continue;
                auto [it, inserted] = band_acc.try_emplace(std::make_pair(two_Jp, two_J));
                if (inserted) {
                  it->second = Eigen::VectorXd::Zero(multiplicity(J));
                }
                it->second[BlockState::m_index(J, M)] += cp * c * weight;
              }
            }
          }
        }
      }
    }
    current = std::move(next);
  }

  for (const auto& [two_j, pops] : current) {
    out.block(HalfInt::from_twice(two_j))->populations = pops;
  }
  for (auto& [key, values] : band_acc) {
    BlockState::CoherenceBand band;
    band.j_upper = HalfInt::from_twice(key.first);
    band.j_lower = HalfInt::from_twice(key.second);
    band.values = std::move(values);
    out.bands.push_back(std::move(band));
  }
  std::sort(out.bands.begin(), out.bands.end(), [](const auto& a, const auto& b) {
    if (a.j_upper != b.j_upper) return a.j_upper > b.j_upper;
    return a.j_lower > b.j_lower;
  });
  return out;
}

BlockState thermal_reduced(int n, HalfInt s, double beta) {
  if (n < 1 || s.twice() < 1) {
    throw std::domain_error("thermal_reduced: requires n >= 1 and s >= 1/2");
  }
  // ln Z by log-sum-exp over m_s = s .. -s.
  double max_e = std::abs(beta) * s.value();
  double acc = 0.0;
  for (int i = 0; i < multiplicity(s); ++i) {
    const double ms = 0.5 * (s.twice() - 2 * i);
    acc += std::exp(-beta * ms - max_e);
  }
  const double log_z = max_e + std::log(acc);

  BlockState st = BlockState::zeros(n, s);
  for (auto& b : st.blocks) {
    const double log_d = log_degeneracy(n, s, b.j);
    if (log_d == kNegInf) continue;
    const Eigen::VectorXd m = m_values(b.j);
    for (int i = 0; i < b.dim(); ++i) {
      b.populations[i] = std::exp(log_d - n * log_z - beta * m[i]);
    }
  }
  return st;
}

}  // namespace jspin
