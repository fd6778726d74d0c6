#pragma once

#include <vector>

#include "matrix_core.hpp"

namespace pspca {

// Strictly increasing, distinct column indices in [0, p).
struct IndexSet {
  std::vector<Index> indices;

  Index size() const { return static_cast<Index>(indices.size()); }
  bool empty() const { return indices.empty(); }
  bool operator==(const IndexSet&) const = default;
};

IndexSet full_index_set(Index p);

// Validates ordering, uniqueness and range; empty_support / index_out_of_range
// on violation.
void validate_index_set(const IndexSet& j, Index p);

// Copies the selected columns of cd.x into an n x |J| block.
Matrix subset_columns(const CenteredData& cd, const IndexSet& j);

struct SparseComponent {
  IndexSet support;
  Vector loadings;          // length p, exactly zero off-support, unit l2 norm
  Vector raw_coefficients;  // length |J|, unnormalized regression solution
  Vector score;             // length n, X_J * (loadings restricted to J)
  double projection_r2 = 0.0;
  double component_variance = 0.0;
  long parent_index = 0;

  Index cardinality() const { return support.size(); }
};

// Least-squares solve of the parent score t on X_J via the normal equations
// (X_J' X_J) a = X_J' t, plus the captured share ||X_J a||^2 / ||t||^2.
// This single routine defines both the selector's stopping statistic and the
// reported projection_r2, so the alpha guarantee holds bit-for-bit.
struct ProjectionSolve {
  Vector raw_coefficients;
  double r2 = 0.0;
};
ProjectionSolve solve_projection(const CenteredData& cd, const Vector& t,
                                 const IndexSet& j);

// Builds the sparse component for support J: normalized zero-padded loadings,
// score recomputed from the normalized loadings, and variance bookkeeping.
SparseComponent project_loadings(const CenteredData& cd, const Vector& t,
                                 const IndexSet& j);

// R^2 of regressing t on X_J, computed from an orthonormal basis of X_J's
// column span. Rank-deficient subsets are handled by basis dropping, so this
// is the safe evaluator for selection.
double projection_r2(const CenteredData& cd, const Vector& t, const IndexSet& j);

// Projection deflation X <- X - s (s's)^{-1} s'X. Column means stay zero
// because s is a combination of centered columns.
CenteredData deflate(const CenteredData& cd, const Vector& s);

// Adjusted cumulative explained variance of possibly correlated score
// columns: orthonormalize the scores in order, credit each surviving column
// with ||X'q||^2 / ((n-1) * total_variance), and cumulate. Dropped (dependent)
// columns add exactly zero.
std::vector<double> adjusted_vexp(const CenteredData& cd_original,
                                  const Matrix& scores);

}  // namespace pspca
