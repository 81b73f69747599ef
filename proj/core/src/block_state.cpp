#include "jspin/block_state.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "jspin/combinatorics.hpp"

namespace jspin {

EnsembleSpec EnsembleSpec::half_spin(int n, double p) {
  return EnsembleSpec{n, HalfInt::half(), {p, 1.0 - p}};
}

void EnsembleSpec::validate() const {
  if (n < 1) {
    throw std::invalid_argument("EnsembleSpec: n must be >= 1");
  }
  if (s.twice() < 1) {
    throw std::invalid_argument("EnsembleSpec: s must be >= 1/2");
  }
  if (static_cast<int>(probs.size()) != multiplicity(s)) {
    throw std::invalid_argument("EnsembleSpec: probs must have 2s+1 entries");
  }
  double sum = 0.0;
  for (double v : probs) {
    if (!(v >= 0.0)) {
      throw std::invalid_argument("EnsembleSpec: probs must be non-negative");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("EnsembleSpec: probs must sum to 1");
  }
}

BlockState BlockState::zeros(int n, HalfInt s) {
  BlockState st;
  st.n = n;
  st.s = s;
  for (HalfInt j : j_grid(n, s)) {
    Block b;
    b.j = j;
    b.populations = Eigen::VectorXd::Zero(multiplicity(j));
    st.blocks.push_back(std::move(b));
  }
  return st;
}

double BlockState::trace() const {
  double t = 0.0;
  for (const auto& b : blocks) {
    t += b.mass();
  }
  return t;
}

const BlockState::Block* BlockState::block(HalfInt j) const {
  for (const auto& b : blocks) {
    if (b.j == j) return &b;
  }
  return nullptr;
}

BlockState::Block* BlockState::block(HalfInt j) {
  for (auto& b : blocks) {
    if (b.j == j) return &b;
  }
  return nullptr;
}

const BlockState::CoherenceBand* BlockState::band(HalfInt j_upper, HalfInt j_lower) const {
  for (const auto& b : bands) {
    if (b.j_upper == j_upper && b.j_lower == j_lower) return &b;
  }
  return nullptr;
}

bool BlockState::has_dense() const {
  for (const auto& b : blocks) {
    if (b.dense.has_value()) return true;
  }
  return false;
}

double max_abs_difference(const BlockState& a, const BlockState& b) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (a.n != b.n || a.s != b.s) return kInf;
  double worst = 0.0;
  for (const auto& ba : a.blocks) {
    const auto* bb = b.block(ba.j);
    if (bb == nullptr || bb->dim() != ba.dim()) return kInf;
    if (ba.dense || bb->dense) {
      auto densify = [](const BlockState::Block& blk) -> Eigen::MatrixXcd {
        if (blk.dense) return *blk.dense;
        return blk.populations.cast<std::complex<double>>().asDiagonal();
      };
      worst = std::max(worst, (densify(ba) - densify(*bb)).cwiseAbs().maxCoeff());
    } else {
      worst = std::max(worst, (ba.populations - bb->populations).cwiseAbs().maxCoeff());
    }
  }
  auto scan_bands = [&worst](const BlockState& x, const BlockState& y) {
    for (const auto& band : x.bands) {
      const auto* other = y.band(band.j_upper, band.j_lower);
      if (other == nullptr) {
        worst = std::max(worst, band.values.cwiseAbs().maxCoeff());
      } else {
        worst = std::max(worst, (band.values - other->values).cwiseAbs().maxCoeff());
      }
    }
  };
  scan_bands(a, b);
  scan_bands(b, a);
  return worst;
}

}  // namespace jspin
