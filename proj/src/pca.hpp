#pragma once

#include "eigen_power.hpp"
#include "matrix_core.hpp"

namespace pspca {

struct PcaModel {
  Matrix loadings;       // p x k, unit-norm columns
  Vector eigenvalues;    // k, nonincreasing
  Matrix scores;         // n x k, scores = X * loadings
  double total_variance = 0.0;  // trace of the covariance, independent of k
  Index n = 0;
  Index p = 0;
  Index k = 0;
  bool scaled = false;   // preprocessing record
};

// Full-cardinality PCA by the deflated power method. Uses the covariance
// path when p <= max(n, 2048), the Gram path otherwise. k = 0 selects all
// components whose eigenvalue exceeds 1e-8 * lambda_1.
PcaModel fit_pca(const CenteredData& cd, long k, const PowerConfig& cfg = {});

// eigenvalue_i / total_variance, each in [0, 1], nonincreasing.
Vector explained_variance_ratio(const PcaModel& model);

// True when the p x p covariance should be formed; the Gram path otherwise.
bool use_covariance_path(Index n, Index p);

// Leading PC of cd on whichever path use_covariance_path picks.
GramLeading leading_pc(const CenteredData& cd, const PowerConfig& cfg);

}  // namespace pspca
