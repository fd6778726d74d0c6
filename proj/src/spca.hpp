#pragma once

#include <vector>

#include "pca.hpp"
#include "projection.hpp"
#include "selection.hpp"

namespace pspca {

enum class DeflationMode { projection, none };

const char* deflation_mode_name(DeflationMode m);

struct SpcaConfig {
  DeflationMode deflation = DeflationMode::projection;
  PowerConfig power;
  // Optional per-component cardinality caps (used by the benchmark harness to
  // match cardinalities across methods). Entry i overrides
  // policy.max_cardinality for component i; for threshold / exhaustive it is
  // the exact cardinality.
  std::vector<Index> cardinality_schedule;
};

struct SpcaFit {
  std::vector<SparseComponent> components;
  std::vector<SelectionTrace> traces;              // parallel to components
  std::vector<double> adjusted_cumulative_vexp;    // nondecreasing, <= 1
  std::vector<double> parent_eigenvalues;          // lambda of each step's PC
  DeflationMode deflation_mode = DeflationMode::projection;
  SelectionPolicy policy;
  PowerConfig power;
  long k_requested = 0;
  Index n = 0;
  Index p = 0;
  bool scaled = false;
  double total_variance = 0.0;
};

// Sequential sparse component extraction: at each step, take the leading PC
// of the current (possibly deflated) data, choose a support with the
// configured selector, project the PC score onto that support, then deflate
// by the resulting sparse score. Stops early once the residual total variance
// falls to <= 1e-10 of the original.
SpcaFit fit_spca(const CenteredData& cd, long k, const SelectionPolicy& policy,
                 const SpcaConfig& config = {});

}  // namespace pspca
