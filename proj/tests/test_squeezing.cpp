#include "jspin/squeezing.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "jspin/ensemble.hpp"
#include "jspin/spin_operators.hpp"
#include "test_helpers.hpp"

using jspin::BlockState;
using jspin::HalfInt;
using jspin::one_axis_analytic;
using jspin::one_axis_evolve;
using jspin::reduced_halfspin;

namespace {

constexpr double kPi = std::numbers::pi;

// |j, m=j> as a single-block state.
BlockState pure_top_block(HalfInt j) {
  BlockState st;
  st.n = j.twice();
  st.s = HalfInt::half();
  BlockState::Block b;
  b.j = j;
  b.populations = Eigen::VectorXd::Zero(jspin::multiplicity(j));
  b.populations[0] = 1.0;
  st.blocks.push_back(std::move(b));
  return st;
}

double block_j2_expectation(const BlockState::Block& b) {
  return jspin::j_squared_eigenvalue(b.j) * b.mass();
}

// Minimal variance over transverse directions via the covariance matrix.
double min_transverse_variance(const BlockState& st) {
  return jspin::covariance_ellipse(st).var_minor;
}

}  // namespace

TEST_CASE("one-axis evolution at mu = 0 is the identity") {
  const auto st = reduced_halfspin(8, 0.85);
  const auto evolved = one_axis_evolve(st, 0.0);
  CHECK(jspin::test::max_state_diff(st, evolved) < 1e-14);
}

TEST_CASE("j = 1/2 blocks are unaffected by the twist") {
  const auto st = pure_top_block(HalfInt::half());
  for (double mu : {0.1, 0.8, 2.5}) {
    const auto evolved = one_axis_evolve(st, mu);
    const auto m = jspin::moments_from_state(evolved);
    CHECK(m.var_x == doctest::Approx(0.25));
    CHECK(m.var_y == doctest::Approx(0.25));
  }
}

TEST_CASE("evolutions preserve trace, hermiticity and block J^2") {
  for (int n : {6, 21, 60}) {
    const auto st = reduced_halfspin(n, 0.9);
    for (const BlockState& evolved :
         {one_axis_evolve(st, 0.37), jspin::countertwist_exact_evolve(st, 0.05)}) {
      CHECK(std::abs(evolved.trace() - 1.0) < 1e-12);
      for (const auto& b : evolved.blocks) {
        if (b.dense) {
          CHECK((*b.dense - b.dense->adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        }
        if (b.dim() > 0) {
          CHECK(b.populations.minCoeff() >= -1e-14);
        }
        const auto* orig = st.block(b.j);
        CHECK(std::abs(b.mass() - orig->mass()) < 1e-12);
        CHECK(std::abs(block_j2_expectation(b) - block_j2_expectation(*orig)) < 1e-10);
      }
    }
  }
}

TEST_CASE("evolutions reject non-diagonal input") {
  const auto once = one_axis_evolve(reduced_halfspin(6, 0.9), 0.2);
  CHECK_THROWS_AS(one_axis_evolve(once, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(jspin::countertwist_exact_evolve(once, 0.1), std::invalid_argument);
}

TEST_CASE("analytic twist formula basics") {
  const auto rest = one_axis_analytic(HalfInt(5), 0.0);
  CHECK(rest.var_theta == doctest::Approx(2.5));
  CHECK(rest.theta == doctest::Approx(0.0));

  for (double mu : {0.05, 0.4, 1.0, 0.5 * kPi, 3.0}) {
    CHECK(one_axis_analytic(HalfInt::half(), mu).var_theta == doctest::Approx(0.25));
  }
  CHECK_THROWS_AS(one_axis_analytic(HalfInt(0), 0.3), std::domain_error);
}

TEST_CASE("analytic variance equals the exact block evolution") {
  for (int twice_j = 1; twice_j <= 30; ++twice_j) {
    const HalfInt j = HalfInt::from_twice(twice_j);
    for (double mu : {0.05, 0.1, 0.25, 0.5}) {
      const auto evolved = one_axis_evolve(pure_top_block(j), mu);
      const auto analytic = one_axis_analytic(j, mu);
      CHECK(std::abs(min_transverse_variance(evolved) - analytic.var_theta) < 1e-8);
    }
  }
}

TEST_CASE("analytic angle matches the covariance minor axis") {
  for (int twice_j : {5, 15, 20}) {
    const HalfInt j = HalfInt::from_twice(twice_j);
    const double mu = 0.2;
    const auto evolved = one_axis_evolve(pure_top_block(j), mu);
    const auto ellipse = jspin::covariance_ellipse(evolved);
    const auto analytic = one_axis_analytic(j, mu);
    double expect = std::fmod(analytic.theta + 0.5 * kPi, kPi);
    if (expect < 0) expect += kPi;
    CHECK(std::abs(ellipse.angle_minor - expect) < 1e-8);
  }
}

TEST_CASE("unsqueezed ellipse is the isotropic disk") {
  for (double p : {0.5, 0.8, 1.0}) {
    const int n = 14;
    const auto e = jspin::covariance_ellipse(reduced_halfspin(n, p));
    CHECK(e.var_minor == doctest::Approx(0.25 * n));
    CHECK(e.var_major == doctest::Approx(0.25 * n));
  }
}

TEST_CASE("optimal twist of a pure sample hits the analytic minimum") {
  const int n = 15;
  const HalfInt j0 = HalfInt::from_twice(n);
  const double mu = jspin::optimal_mu(j0);
  const auto evolved = one_axis_evolve(reduced_halfspin(n, 1.0), mu);
  const auto analytic = one_axis_analytic(j0, mu);
  CHECK(std::abs(min_transverse_variance(evolved) - analytic.var_theta) < 1e-8);
  CHECK(analytic.var_theta < 0.25 * n);  // squeezed below the standard quantum limit
}

TEST_CASE("Heisenberg bound holds after every evolution") {
  for (int n : {8, 15, 40}) {
    for (double p : {0.8, 0.95, 1.0}) {
      const auto st = reduced_halfspin(n, p);
      for (const BlockState& evolved :
           {one_axis_evolve(st, 0.3), jspin::countertwist_exact_evolve(st, 0.04)}) {
        const auto m = jspin::moments_from_state(evolved);
        CHECK(std::sqrt(m.var_x * m.var_y) >= 0.5 * std::abs(m.mean_z) - 1e-9);
      }
    }
  }
}

TEST_CASE("pre-squeezing uncertainty product") {
  for (double p : {0.6, 0.75, 0.9}) {
    const int n = 12;
    const auto m = jspin::moments_from_state(reduced_halfspin(n, p));
    CHECK(std::sqrt(m.var_x * m.var_y) == doctest::Approx(0.25 * n));
    CHECK(std::sqrt(m.var_x * m.var_y) / (0.5 * std::abs(m.mean_z)) ==
          doctest::Approx(1.0 / std::abs(2.0 * p - 1.0)));
  }
}

TEST_CASE("per-block squeezing axis turns clockwise with increasing j") {
  const int n = 15;
  const double p = 0.9;
  const double mu = jspin::optimal_mu_real((2.0 * p - 1.0) * 0.5 * n);
  const auto evolved = one_axis_evolve(reduced_halfspin(n, p), mu);
  const auto blocks = jspin::block_covariance_ellipses(evolved);
  // j descending; skip the isotropic j = 1/2 block at the end.
  for (std::size_t i = 0; i + 2 < blocks.size(); ++i) {
    CHECK(blocks[i].ellipse.angle_minor < blocks[i + 1].ellipse.angle_minor);
  }
  // The outermost dashed ellipse belongs to j = j0 - 1, not j0.
  std::size_t largest = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const double area = blocks[i].ellipse.var_minor * blocks[i].ellipse.var_major;
    if (area > best) {
      best = area;
      largest = i;
    }
  }
  CHECK(blocks[largest].j == HalfInt::from_twice(13));
}

TEST_CASE("optimal-mu spread estimate") {
  CHECK_THROWS_AS(jspin::optimal_mu_spread(100, 0.4), std::domain_error);

  const auto pure = jspin::optimal_mu_spread(100, 1.0);
  CHECK(pure.estimate == doctest::Approx(0.0));
  CHECK(pure.measured == doctest::Approx(0.0));

  const auto spread = jspin::optimal_mu_spread(100, 0.99);
  CHECK(spread.estimate == doctest::Approx(-0.01 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(spread.measured < 0.0);
  CHECK(std::abs(spread.measured) < 2.0 * std::abs(spread.estimate));
  CHECK(std::abs(spread.measured) > 0.5 * std::abs(spread.estimate));
}

TEST_CASE("countertwist HP variance limits") {
  const int n = 30;
  const double j0 = 0.5 * n;
  // Fully polarized: e^{-lambda j0} j0 / 2, exactly.
  for (double lambda : {0.0, 0.02, 0.1}) {
    const double v = jspin::countertwist_hp_variance(reduced_halfspin(n, 1.0), lambda);
    CHECK(std::abs(v - std::exp(-lambda * j0) * 0.5 * j0) < 1e-12);
  }
  // lambda = 0 reduces to the transverse variance j0/2 for any p.
  for (double p : {0.2, 0.5, 0.8, 0.99}) {
    CHECK(std::abs(jspin::countertwist_hp_variance(reduced_halfspin(n, p), 0.0) - 0.5 * j0) <
          1e-10);
  }
}

TEST_CASE("countertwist HP tracks the exact evolution while weakly squeezed") {
  auto exact_var_y = [](int n, double p, double lambda) {
    const auto evolved = jspin::countertwist_exact_evolve(reduced_halfspin(n, p), lambda);
    return jspin::moments_from_state(evolved).var_y;
  };
  // s0 <= 1.5 at n = 20.
  for (double s0 : {1.1, 1.3, 1.45}) {
    const double lambda = 2.0 * std::log(s0) / 10.0;
    const double hp = jspin::countertwist_hp_variance(reduced_halfspin(20, 1.0), lambda);
    const double exact = exact_var_y(20, 1.0, lambda);
    CHECK(std::abs(hp - exact) / exact < 0.03);
  }
  // s0 <= 2 at n = 40 with a slightly depolarized sample.
  for (double s0 : {1.25, 1.75, 2.0}) {
    const double lambda = 2.0 * std::log(s0) / 20.0;
    const double hp = jspin::countertwist_hp_variance(reduced_halfspin(40, 0.99), lambda);
    const double exact = exact_var_y(40, 0.99, lambda);
    CHECK(std::abs(hp - exact) / exact < 0.05);
  }
}

TEST_CASE("countertwist closed form") {
  const int n = 200;
  const double j0 = 100.0;
  // p = 1 collapses to the pure limit.
  CHECK(jspin::countertwist_closed_form(n, 1.0, 0.01) ==
        doctest::Approx(std::exp(-1.0) * 0.5 * j0));
  CHECK_THROWS_AS(jspin::countertwist_closed_form(n, 0.5, 0.01), std::domain_error);

  // Within 2% of the HP sum at high polarization.
  const auto st = reduced_halfspin(n, 0.99);
  for (double lj0 : {0.5, 1.0}) {
    const double lambda = lj0 / j0;
    const double sum = jspin::countertwist_hp_variance(st, lambda);
    CHECK(std::abs(jspin::countertwist_closed_form(n, 0.99, lambda) - sum) / sum < 0.02);
    CHECK(std::abs(jspin::countertwist_first_order(n, 0.99, lambda) - sum) / sum < 0.02);
  }

  // First-order expansion of the closed form in (1-p).
  const double lambda = 0.005;
  const double eps = 1e-6;
  const double cf = jspin::countertwist_closed_form(n, 1.0 - eps, lambda);
  const double fo = jspin::countertwist_first_order(n, 1.0 - eps, lambda);
  CHECK(std::abs(cf - fo) / fo < 1e-9);
}

TEST_CASE("Ramsey squeezing factor") {
  const int n = 100;
  const double j0 = 50.0;
  const double lambda = 0.4 / j0;

  const auto pure = jspin::ramsey_xi(n, 1.0, lambda);
  CHECK(pure.s0 == doctest::Approx(std::exp(0.2)));
  CHECK(pure.xi_r == doctest::Approx(1.0 / pure.s0).epsilon(1e-12));
  CHECK(pure.xi_r_first_order == doctest::Approx(1.0 / pure.s0));

  const auto none = jspin::ramsey_xi(n, 0.93, 0.0);
  CHECK(none.xi_r == doctest::Approx(1.0).epsilon(1e-10));

  // Slope in (1-p) near p = 1 matches the first-order coefficient 2 ln s0 / s0.
  const double eps = 5e-4;
  const double slope = (jspin::ramsey_xi(n, 1.0 - eps, lambda).xi_r - pure.xi_r) / eps;
  const double target = 2.0 * std::log(pure.s0) / pure.s0;
  CHECK(std::abs(slope - target) / target < 0.05);
}

TEST_CASE("exact countertwist squeezes y for every strength") {
  const auto st = reduced_halfspin(40, 1.0);
  const auto idle = jspin::countertwist_exact_evolve(st, 0.0);
  CHECK(jspin::test::max_state_diff(st, idle) < 1e-14);

  for (double s0 : {1.2, 1.5, 2.0}) {
    const double lambda = 2.0 * std::log(s0) / 20.0;
    const auto evolved = jspin::countertwist_exact_evolve(st, lambda);
    const auto e = jspin::covariance_ellipse(evolved);
    CHECK(std::abs(e.angle_minor - 0.5 * kPi) < 1e-9);
    const auto m = jspin::moments_from_state(evolved);
    CHECK(m.var_y == doctest::Approx(e.var_minor));
    CHECK(m.var_y < 0.25 * 40);
  }
}
