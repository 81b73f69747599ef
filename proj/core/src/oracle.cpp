#include "jspin/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "jspin/clebsch_gordan.hpp"
#include "jspin/spin_operators.hpp"

namespace jspin {

namespace {

constexpr long long kBasisDimLimit = 1LL << 20;  // strict: dim must stay below
constexpr long long kEvolveDimLimit = 4096;      // dense eigendecomposition guard

long long product_dim(int n, HalfInt s, long long limit) {
  long long dim = 1;
  for (int i = 0; i < n; ++i) {
    dim *= multiplicity(s);
    if (dim >= limit) {
      throw ResourceError("oracle: product space dimension exceeds the resource guard");
    }
  }
  return dim;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
    }
  }
  return out;
}

// Collective operator sum_i 1 x .. x op x .. x 1 in the product basis.
Eigen::MatrixXcd collective(const Eigen::MatrixXcd& op, int n) {
  const Eigen::Index d1 = op.rows();
  Eigen::MatrixXcd total;
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(1, 1);
    for (int k = 0; k < n; ++k) {
      term = kron(term, k == i ? op
                               : Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(d1, d1)));
    }
    total = (i == 0) ? term : Eigen::MatrixXcd(total + term);
  }
  return total;
}

struct EvolveResult {
  Moments moments;
  TransverseCovariance cov;
};

EvolveResult evolve_product_space(const EnsembleSpec& spec, TwistKind kind, double strength) {
  spec.validate();
  const long long dim = product_dim(spec.n, spec.s, kEvolveDimLimit);
  const ProductState ps = ProductState::from_spec(spec);

  const JOperators single = j_operators(spec.s);
  const Eigen::MatrixXcd jx = collective(single.jx, spec.n);
  const Eigen::MatrixXcd jy = collective(single.jy, spec.n);
  const Eigen::MatrixXcd jz = collective(single.jz, spec.n);

  Eigen::MatrixXcd gen;
  double angle = 0.0;
  if (kind == TwistKind::one_axis) {
    gen = jy * jy;
    angle = 0.5 * strength;
  } else {
    const Eigen::MatrixXcd jp = collective(single.jplus, spec.n);
    const Eigen::MatrixXcd jm = collective(single.jminus, spec.n);
    gen = std::complex<double>(0.0, -0.5) * (jp * jp - jm * jm);
    angle = 0.25 * strength;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gen);
  Eigen::VectorXcd phases(dim);
  for (long long i = 0; i < dim; ++i) {
    phases[i] = std::polar(1.0, -angle * es.eigenvalues()[i]);
  }
  const Eigen::MatrixXcd u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  const Eigen::MatrixXcd rho =
      u * ps.diag.cast<std::complex<double>>().asDiagonal() * u.adjoint();

  auto expect = [&rho](const Eigen::MatrixXcd& op) { return (rho * op).trace().real(); };
  const double ex = expect(jx);
  const double ey = expect(jy);
  const double ez = expect(jz);
  const double exx = expect(jx * jx);
  const double eyy = expect(jy * jy);
  const double ezz = expect(jz * jz);
  const double exy = 0.5 * expect(jx * jy + jy * jx);

  EvolveResult out;
  out.moments.mean_z = ez;
  out.moments.var_x = exx - ex * ex;
  out.moments.var_y = eyy - ey * ey;
  out.moments.var_z = ezz - ez * ez;
  out.moments.j_squared = exx + eyy + ezz;
  out.cov = {out.moments.var_x, out.moments.var_y, exy - ex * ey};
  return out;
}

}  // namespace

ProductState ProductState::from_spec(const EnsembleSpec& spec) {
  spec.validate();
  const long long dim = product_dim(spec.n, spec.s, kBasisDimLimit);
  const int d1 = multiplicity(spec.s);
  ProductState ps;
  ps.n = spec.n;
  ps.s = spec.s;
  ps.diag.resize(dim);
  for (long long idx = 0; idx < dim; ++idx) {
    double v = 1.0;
    long long rest = idx;
    for (int k = 0; k < spec.n; ++k) {
      v *= spec.probs[rest % d1];
      rest /= d1;
    }
    ps.diag[idx] = v;
  }
  return ps;
}

CouplingChain build_coupled_basis(int n, HalfInt s) {
  if (n < 1 || s.twice() < 1) {
    throw std::domain_error("build_coupled_basis: requires n >= 1 and s >= 1/2");
  }
  const long long dim = product_dim(n, s, kBasisDimLimit);
  const int d1 = multiplicity(s);

  struct Col {
    std::vector<HalfInt> chain;
    HalfInt m;
    Eigen::VectorXd vec;
  };

  // Step 1: single particle, coupled basis == product basis.
  std::vector<Col> cols;
  cols.reserve(d1);
  for (int i = 0; i < d1; ++i) {
    Col c;
    c.chain = {s};
    c.m = HalfInt::from_twice(s.twice() - 2 * i);
    c.vec = Eigen::VectorXd::Zero(d1);
    c.vec[i] = 1.0;
    cols.push_back(std::move(c));
  }

  for (int k = 2; k <= n; ++k) {
    // Group the current columns by identical chain; each group spans one
    // intermediate multiplet.
    std::vector<std::pair<std::vector<HalfInt>, std::map<int, int>>> groups;
    for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
      auto it = std::find_if(groups.begin(), groups.end(),
                             [&](const auto& g) { return g.first == cols[c].chain; });
      if (it == groups.end()) {
        groups.push_back({cols[c].chain, {}});
        it = std::prev(groups.end());
      }
      it->second[cols[c].m.twice()] = c;
    }

    const long long prev_dim = cols.front().vec.size();
    const long long new_dim = prev_dim * d1;
    std::vector<Col> next;
    for (const auto& [chain, by_m] : groups) {
      const HalfInt jk = chain.back();
      for (int two_J = jk.twice() + s.twice(); two_J >= std::abs(jk.twice() - s.twice());
           two_J -= 2) {
        const HalfInt J = HalfInt::from_twice(two_J);
        for (int two_M = two_J; two_M >= -two_J; two_M -= 2) {
          const HalfInt M = HalfInt::from_twice(two_M);
          Col nc;
          nc.chain = chain;
          nc.chain.push_back(J);
          nc.m = M;
          nc.vec = Eigen::VectorXd::Zero(new_dim);
          for (int is = 0; is < d1; ++is) {
            const HalfInt ms = HalfInt::from_twice(s.twice() - 2 * is);
            const HalfInt mk = M - ms;
            auto it = by_m.find(mk.twice());
            if (it == by_m.end()) continue;
            const double cg = clebsch_gordan(jk, mk, s, ms, J, M);
            if (cg == 0.0) continue;
            const Eigen::VectorXd& old = cols[it->second].vec;
            for (long long i = 0; i < prev_dim; ++i) {
              if (old[i] != 0.0) {
                nc.vec[i * d1 + is] += cg * old[i];
              }
            }
          }
          next.push_back(std::move(nc));
        }
      }
    }
    cols = std::move(next);
  }

  CouplingChain chain;
  chain.n = n;
  chain.s = s;
  chain.basis.resize(dim, dim);
  chain.chains.reserve(cols.size());
  chain.proj.reserve(cols.size());
  for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
    chain.basis.col(c) = cols[c].vec;
    chain.chains.push_back(cols[c].chain);
    chain.proj.push_back(cols[c].m);
  }
  return chain;
}

BlockState brute_force_reduced(const EnsembleSpec& spec) {
  const CouplingChain chain = build_coupled_basis(spec.n, spec.s);
  const ProductState ps = ProductState::from_spec(spec);
  const int dim = chain.dim();

  auto diag_overlap = [&](int u, int v) {
    double acc = 0.0;
    for (int i = 0; i < dim; ++i) {
      acc += chain.basis(i, u) * chain.basis(i, v) * ps.diag[i];
    }
    return acc;
  };

  BlockState out = BlockState::zeros(spec.n, spec.s);
  for (int c = 0; c < dim; ++c) {
    const HalfInt j = chain.chains[c].back();
    out.block(j)->populations[BlockState::m_index(j, chain.proj[c])] += diag_overlap(c, c);
  }

  // Coherences: same intermediate chain (all spins but the last), same m,
  // different final j within the 2s band.
  std::map<std::pair<int, int>, Eigen::VectorXd> bands;
  std::map<std::pair<std::vector<int>, int>, std::vector<int>> prefix_groups;
  for (int c = 0; c < dim; ++c) {
    std::vector<int> prefix;
    prefix.reserve(chain.chains[c].size() - 1);
    for (std::size_t i = 0; i + 1 < chain.chains[c].size(); ++i) {
      prefix.push_back(chain.chains[c][i].twice());
    }
    prefix_groups[{std::move(prefix), chain.proj[c].twice()}].push_back(c);
  }
  for (const auto& [key, members] : prefix_groups) {
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = 0; b < members.size(); ++b) {
        const HalfInt ja = chain.chains[members[a]].back();
        const HalfInt jb = chain.chains[members[b]].back();
        if (ja.twice() <= jb.twice()) continue;
        if (ja.twice() - jb.twice() > 2 * spec.s.twice()) continue;
        auto [it, inserted] = bands.try_emplace(std::make_pair(ja.twice(), jb.twice()));
        if (inserted) {
          it->second = Eigen::VectorXd::Zero(multiplicity(jb));
        }
        it->second[BlockState::m_index(jb, chain.proj[members[a]])] +=
            diag_overlap(members[a], members[b]);
      }
    }
  }
  for (auto& [key, values] : bands) {
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

Moments brute_force_evolve(const EnsembleSpec& spec, TwistKind kind, double strength) {
  return evolve_product_space(spec, kind, strength).moments;
}

TransverseCovariance brute_force_transverse(const EnsembleSpec& spec, TwistKind kind,
                                            double strength) {
  return evolve_product_space(spec, kind, strength).cov;
}

}  // namespace jspin
