#pragma once

#include <cstdint>
#include <vector>

#include "projection.hpp"

namespace pspca {

// Ground truth for the spiked covariance simulator: population covariance is
// sum_i spike_i * w_i w_i' + noise_sd^2 * I, with the w_i unit-norm and
// supported on pairwise disjoint index sets.
struct SpikedTruth {
  Matrix true_loadings;           // p x m, unit-norm columns
  std::vector<IndexSet> supports; // m disjoint supports
  Vector spike_variances;         // m, strictly decreasing, positive
  double noise_sd = 0.0;
  std::uint64_t seed = 0;

  Index p() const { return true_loadings.rows(); }
  Index m() const { return true_loadings.cols(); }
};

// Convenience truth with consecutive disjoint supports of equal size and
// equal weights 1/sqrt(size) inside each support.
SpikedTruth make_block_truth(Index p, const std::vector<double>& spikes,
                             Index support_size, double noise_sd,
                             std::uint64_t seed);

void validate_truth(const SpikedTruth& truth);

// Draws X = sum_i sqrt(spike_i) z_i w_i' + noise_sd * E with z_i and E
// standard normal, deterministically from truth.seed (mt19937_64 + inverse
// CDF normals; spikes drawn first, then noise in column-major order).
Matrix simulate_spiked(Index n, Index p, const SpikedTruth& truth);

struct RecoveryPair {
  long estimated_index = 0;
  long truth_index = 0;
  double support_precision = 0.0;
  double support_recall = 0.0;
  double cosine = 0.0;
  bool exact_support = false;
};

struct RecoveryMetrics {
  std::vector<RecoveryPair> pairs;  // greedy |cosine| matching
  bool all_exact = false;           // every truth component exactly recovered
};

RecoveryMetrics recovery_metrics(const std::vector<SparseComponent>& estimated,
                                 const SpikedTruth& truth);

}  // namespace pspca
