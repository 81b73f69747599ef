#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "jspin/half_int.hpp"

namespace jspin {

/// n particles of spin s with diagonal single-particle probabilities p_{m_s},
/// indexed by m_s descending from s to -s.
struct EnsembleSpec {
  int n = 1;
  HalfInt s = HalfInt::half();
  std::vector<double> probs;

  static EnsembleSpec half_spin(int n, double p);

  /// Throws std::invalid_argument unless probs has 2s+1 non-negative entries
  /// summing to 1 within 1e-12 and n >= 1.
  void validate() const;
};

/// First and second moments of the collective spin (hbar = 1).
struct Moments {
  double mean_z = 0.0;
  double var_x = 0.0;
  double var_y = 0.0;
  double var_z = 0.0;
  double j_squared = 0.0;
};

/// Block-structured collective state: one block per legal j, populations
/// diagonal in m, optional j-coherence bands (0 < j_upper - j_lower <= 2s,
/// diagonal in m), and an optional dense per-block matrix once a unitary
/// evolution has created coherences between different m within a block.
///
/// Populations are multiplicity-summed: they are the diagonal of the reduced
/// density matrix, so the total trace over all blocks is 1.
struct BlockState {
  struct Block {
    HalfInt j;
    Eigen::VectorXd populations;            // m = j .. -j descending
    std::optional<Eigen::MatrixXcd> dense;  // kept in sync: real(diag) == populations

    double mass() const { return populations.sum(); }
    int dim() const { return static_cast<int>(populations.size()); }
  };

  struct CoherenceBand {
    HalfInt j_upper;
    HalfInt j_lower;
    Eigen::VectorXd values;  // <j_upper, m| rho |j_lower, m>, m = j_lower .. -j_lower
  };

  int n = 0;
  HalfInt s = HalfInt::half();
  std::vector<Block> blocks;           // j descending over the full legal grid
  std::vector<CoherenceBand> bands;    // sorted by (j_upper desc, j_lower desc)

  /// Full legal j grid with zero populations.
  static BlockState zeros(int n, HalfInt s);

  double trace() const;
  const Block* block(HalfInt j) const;
  Block* block(HalfInt j);
  const CoherenceBand* band(HalfInt j_upper, HalfInt j_lower) const;
  bool has_dense() const;

  /// Index of m within a block: 0 for m = j, dim-1 for m = -j.
  static int m_index(HalfInt j, HalfInt m) { return (j.twice() - m.twice()) / 2; }
};

/// Largest absolute elementwise difference between two states, taken over
/// per-block content (dense matrices when present, populations otherwise)
/// and coherence bands; a band missing on one side counts as zeros.
/// Infinity on shape mismatch.
double max_abs_difference(const BlockState& a, const BlockState& b);

}  // namespace jspin
