#include "datagen.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

#include "rng.hpp"

namespace pspca {

SpikedTruth make_block_truth(Index p, const std::vector<double>& spikes,
                             Index support_size, double noise_sd,
                             std::uint64_t seed) {
  const Index m = static_cast<Index>(spikes.size());
  if (m < 1 || support_size < 1) {
    throw Error(ErrorCode::invalid_argument,
                "block truth: need at least one spike and support size >= 1");
  }
  if (m * support_size > p) {
    throw Error(ErrorCode::bad_support,
                "block truth: " + std::to_string(m) + " supports of size " +
                    std::to_string(support_size) + " do not fit in p = " +
                    std::to_string(p));
  }

  SpikedTruth truth;
  truth.true_loadings = Matrix::Zero(p, m);
  truth.spike_variances.resize(m);
  truth.noise_sd = noise_sd;
  truth.seed = seed;
  const double weight = 1.0 / std::sqrt(static_cast<double>(support_size));
  for (Index i = 0; i < m; ++i) {
    truth.spike_variances[i] = spikes[static_cast<size_t>(i)];
    IndexSet support;
    for (Index j = 0; j < support_size; ++j) {
      const Index col = i * support_size + j;
      support.indices.push_back(col);
      truth.true_loadings(col, i) = weight;
    }
    truth.supports.push_back(std::move(support));
  }
  validate_truth(truth);
  return truth;
}

void validate_truth(const SpikedTruth& truth) {
  const Index p = truth.p();
  const Index m = truth.m();
  if (m < 1) {
    throw Error(ErrorCode::invalid_argument, "truth: no components");
  }
  if (truth.noise_sd < 0.0) {
    throw Error(ErrorCode::invalid_argument, "truth: negative noise sd");
  }
  if (static_cast<Index>(truth.supports.size()) != m ||
      truth.spike_variances.size() != m) {
    throw Error(ErrorCode::invalid_argument,
                "truth: supports / spikes do not match loading columns");
  }
  for (Index i = 0; i < m; ++i) {
    if (truth.spike_variances[i] <= 0.0 ||
        (i > 0 && truth.spike_variances[i] >= truth.spike_variances[i - 1])) {
      throw Error(ErrorCode::invalid_argument,
                  "truth: spike variances must be positive and strictly "
                  "decreasing");
    }
    const double norm = truth.true_loadings.col(i).norm();
    if (std::abs(norm - 1.0) > 1e-8) {
      throw Error(ErrorCode::invalid_argument,
                  "truth: loading column " + std::to_string(i) +
                      " is not unit norm");
    }
  }
  std::vector<bool> used(static_cast<size_t>(p), false);
  for (const IndexSet& support : truth.supports) {
    validate_index_set(support, p);
    for (Index idx : support.indices) {
      if (used[static_cast<size_t>(idx)]) {
        throw Error(ErrorCode::bad_support,
                    "truth: supports overlap at index " + std::to_string(idx));
      }
      used[static_cast<size_t>(idx)] = true;
    }
  }
}

Matrix simulate_spiked(Index n, Index p, const SpikedTruth& truth) {
  if (truth.p() != p) {
    throw Error(ErrorCode::bad_support,
                "simulate: truth built for p = " + std::to_string(truth.p()) +
                    ", data requested with p = " + std::to_string(p));
  }
  validate_truth(truth);
  const Index m = truth.m();
  if (n < 2 || m > n / 2) {
    throw Error(ErrorCode::invalid_argument,
                "simulate: need n >= 2 and m <= n/2");
  }

  NormalSampler sampler(truth.seed);
  Matrix x = Matrix::Zero(n, p);
  for (Index i = 0; i < m; ++i) {
    Vector z(n);
    for (Index r = 0; r < n; ++r) z[r] = sampler.normal();
    const double scale = std::sqrt(truth.spike_variances[i]);
    for (Index c : truth.supports[static_cast<size_t>(i)].indices) {
      x.col(c) += (scale * truth.true_loadings(c, i)) * z;
    }
  }
  if (truth.noise_sd > 0.0) {
    for (Index c = 0; c < p; ++c) {
      for (Index r = 0; r < n; ++r) {
        x(r, c) += truth.noise_sd * sampler.normal();
      }
    }
  }
  return x;
}

RecoveryMetrics recovery_metrics(const std::vector<SparseComponent>& estimated,
                                 const SpikedTruth& truth) {
  if (estimated.empty()) {
    throw Error(ErrorCode::invalid_argument, "recovery: no estimated components");
  }
  validate_truth(truth);
  const long ne = static_cast<long>(estimated.size());
  const long nt = static_cast<long>(truth.m());

  Matrix cos_abs(ne, nt);
  for (long e = 0; e < ne; ++e) {
    for (long t = 0; t < nt; ++t) {
      cos_abs(e, t) = std::abs(
          estimated[static_cast<size_t>(e)].loadings.dot(truth.true_loadings.col(t)));
    }
  }

  RecoveryMetrics metrics;
  std::vector<bool> e_used(static_cast<size_t>(ne), false);
  std::vector<bool> t_used(static_cast<size_t>(nt), false);
  const long n_pairs = std::min(ne, nt);
  for (long pair = 0; pair < n_pairs; ++pair) {
    long best_e = -1;
    long best_t = -1;
    double best = -1.0;
    for (long e = 0; e < ne; ++e) {
      if (e_used[static_cast<size_t>(e)]) continue;
      for (long t = 0; t < nt; ++t) {
        if (t_used[static_cast<size_t>(t)]) continue;
        if (cos_abs(e, t) > best) {  // ties keep the lowest (e, t)
          best = cos_abs(e, t);
          best_e = e;
          best_t = t;
        }
      }
    }
    e_used[static_cast<size_t>(best_e)] = true;
    t_used[static_cast<size_t>(best_t)] = true;

    const IndexSet& se = estimated[static_cast<size_t>(best_e)].support;
    const IndexSet& st = truth.supports[static_cast<size_t>(best_t)];
    std::vector<Index> overlap;
    std::set_intersection(se.indices.begin(), se.indices.end(),
                          st.indices.begin(), st.indices.end(),
                          std::back_inserter(overlap));
    RecoveryPair rp;
    rp.estimated_index = best_e;
    rp.truth_index = best_t;
    rp.cosine = best;
    rp.support_precision =
        static_cast<double>(overlap.size()) / static_cast<double>(se.size());
    rp.support_recall =
        static_cast<double>(overlap.size()) / static_cast<double>(st.size());
    rp.exact_support = (se == st);
    metrics.pairs.push_back(rp);
  }
  metrics.all_exact = (n_pairs == nt) &&
                      std::all_of(metrics.pairs.begin(), metrics.pairs.end(),
                                  [](const RecoveryPair& rp) { return rp.exact_support; });
  return metrics;
}

}  // namespace pspca
