#include "projection.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace pspca {

IndexSet full_index_set(Index p) {
  IndexSet j;
  j.indices.resize(static_cast<size_t>(p));
  std::iota(j.indices.begin(), j.indices.end(), Index{0});
  return j;
}

void validate_index_set(const IndexSet& j, Index p) {
  if (j.empty()) {
    throw Error(ErrorCode::empty_support, "index set is empty");
  }
  Index prev = -1;
  for (Index idx : j.indices) {
    if (idx < 0 || idx >= p) {
      throw Error(ErrorCode::index_out_of_range,
                  "index " + std::to_string(idx) + " outside [0, " +
                      std::to_string(p) + ")");
    }
    if (idx <= prev) {
      throw Error(ErrorCode::invalid_argument,
                  "index set must be strictly increasing");
    }
    prev = idx;
  }
}

Matrix subset_columns(const CenteredData& cd, const IndexSet& j) {
  Matrix xj(cd.n(), j.size());
  for (Index c = 0; c < j.size(); ++c) {
    xj.col(c) = cd.x.col(j.indices[static_cast<size_t>(c)]);
  }
  return xj;
}

namespace {

void validate_target(const CenteredData& cd, const Vector& t) {
  if (t.size() != cd.n()) {
    throw Error(ErrorCode::invalid_argument,
                "target score length does not match row count");
  }
  if (t.squaredNorm() == 0.0) {
    throw Error(ErrorCode::invalid_argument, "target score is zero");
  }
}

}  // namespace

ProjectionSolve solve_projection(const CenteredData& cd, const Vector& t,
                                 const IndexSet& j) {
  validate_index_set(j, cd.p());
  validate_target(cd, t);

  const Matrix xj = subset_columns(cd, j);
  const Matrix a = (xj.transpose() * xj).eval();
  const Vector b = xj.transpose() * t;
  ProjectionSolve out;
  try {
    out.raw_coefficients = solve_spd(a, b);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::singular_submatrix) {
      throw Error(ErrorCode::singular_submatrix,
                  std::string("subset is rank deficient: ") + e.what());
    }
    throw;
  }
  out.r2 = (xj * out.raw_coefficients).squaredNorm() / t.squaredNorm();
  return out;
}

SparseComponent project_loadings(const CenteredData& cd, const Vector& t,
                                 const IndexSet& j) {
  ProjectionSolve solve = solve_projection(cd, t, j);

  const Matrix xj = subset_columns(cd, j);
  double max_col_norm = 0.0;
  for (Index c = 0; c < xj.cols(); ++c) {
    max_col_norm = std::max(max_col_norm, xj.col(c).norm());
  }
  const double coeff_norm = solve.raw_coefficients.norm();
  if (max_col_norm == 0.0 ||
      coeff_norm <= 1e-14 * t.norm() / max_col_norm) {
    throw Error(ErrorCode::zero_projection,
                "projection of the parent score onto the subset is zero");
  }

  SparseComponent comp;
  comp.support = j;
  comp.raw_coefficients = solve.raw_coefficients;
  comp.projection_r2 = solve.r2;
  comp.loadings = Vector::Zero(cd.p());
  const Vector normalized = solve.raw_coefficients / coeff_norm;
  for (Index c = 0; c < j.size(); ++c) {
    comp.loadings[j.indices[static_cast<size_t>(c)]] = normalized[c];
  }
  comp.score = xj * normalized;
  comp.component_variance =
      comp.score.squaredNorm() / static_cast<double>(cd.n() - 1);
  return comp;
}

double projection_r2(const CenteredData& cd, const Vector& t,
                     const IndexSet& j) {
  validate_index_set(j, cd.p());
  validate_target(cd, t);
  const Matrix q = orthonormalize(subset_columns(cd, j));
  if (q.cols() == 0) return 0.0;
  return (q.transpose() * t).squaredNorm() / t.squaredNorm();
}

CenteredData deflate(const CenteredData& cd, const Vector& s) {
  if (s.size() != cd.n()) {
    throw Error(ErrorCode::invalid_argument,
                "deflate: score length does not match row count");
  }
  const double s2 = s.squaredNorm();
  if (s2 == 0.0) {
    throw Error(ErrorCode::zero_score, "deflate: score vector is zero");
  }
  CenteredData out = cd;
  out.x -= s * ((s.transpose() * cd.x) / s2);
  return out;
}

std::vector<double> adjusted_vexp(const CenteredData& cd_original,
                                  const Matrix& scores) {
  const Index k = scores.cols();
  std::vector<double> cumulative(static_cast<size_t>(k), 0.0);
  if (k == 0) return cumulative;
  if (scores.rows() != cd_original.n()) {
    throw Error(ErrorCode::invalid_argument,
                "adjusted_vexp: score rows do not match data rows");
  }

  std::vector<Index> kept;
  const Matrix q = orthonormalize(scores, &kept);
  const double denom = static_cast<double>(cd_original.n() - 1) *
                       total_variance(cd_original);

  std::vector<double> per_column(static_cast<size_t>(k), 0.0);
  for (Index c = 0; c < q.cols(); ++c) {
    const Index orig = kept[static_cast<size_t>(c)];
    per_column[static_cast<size_t>(orig)] =
        (cd_original.x.transpose() * q.col(c)).squaredNorm() / denom;
  }
  double running = 0.0;
  for (Index i = 0; i < k; ++i) {
    running += per_column[static_cast<size_t>(i)];
    cumulative[static_cast<size_t>(i)] = running;
  }
  return cumulative;
}

}  // namespace pspca
