#pragma once

#include <Eigen/Dense>
#include <vector>

#include "errors.hpp"

namespace pspca {

// Column-major dense carriers used across the whole library. Column slicing
// (variable subsets) is the hot access pattern, so storage stays column-major.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// A data matrix with zero-mean columns plus the preprocessing record needed
// to round-trip back to the raw scale.
struct CenteredData {
  Matrix x;              // n x p, column means are 0
  Vector column_means;   // p
  bool scaled = false;
  Vector scale_factors;  // p, all 1 when unscaled

  Index n() const { return x.rows(); }
  Index p() const { return x.cols(); }
};

// Subtracts column means; with scale, also divides by the sample standard
// deviation (divisor n-1). Rejects non-finite input and, when scaling,
// constant columns.
CenteredData center(const Matrix& raw, bool scale);

// S = X'X / (n-1), symmetrized exactly as (S + S') / 2.
Matrix covariance(const CenteredData& cd);

// K = XX' / (n-1); shares its nonzero eigenvalues with covariance(cd).
Matrix gram(const CenteredData& cd);

// trace of covariance(cd) without forming it.
double total_variance(const CenteredData& cd);

// Solves A Z = B for symmetric positive definite A by an unpivoted Cholesky
// factorization. A pivot <= 1e-12 times the mean diagonal raises
// singular_submatrix; the selection loop relies on that as its rank guard.
Matrix solve_spd(const Matrix& a, const Matrix& b);

// Sequential Gram-Schmidt with one re-orthogonalization pass. Columns whose
// residual norm falls to <= 1e-10 times their original norm are dropped,
// preserving the order of the survivors. When kept is non-null it receives
// the input column index of each surviving output column.
Matrix orthonormalize(const Matrix& m, std::vector<Index>* kept = nullptr);

}  // namespace pspca
