#include "matrix_core.hpp"

#include <cmath>
#include <string>

namespace pspca {

CenteredData center(const Matrix& raw, bool scale) {
  const Index n = raw.rows();
  const Index p = raw.cols();
  if (n < 2 || p < 1) {
    throw Error(ErrorCode::invalid_argument,
                "center: need at least 2 rows and 1 column, got " +
                    std::to_string(n) + "x" + std::to_string(p));
  }
  if (!raw.allFinite()) {
    throw Error(ErrorCode::non_finite, "center: input contains NaN or Inf");
  }

  CenteredData cd;
  cd.column_means = raw.colwise().mean();
  cd.x = raw.rowwise() - cd.column_means.transpose();
  cd.scaled = scale;
  cd.scale_factors = Vector::Ones(p);
  if (scale) {
    for (Index j = 0; j < p; ++j) {
      const double var = cd.x.col(j).squaredNorm() / static_cast<double>(n - 1);
      const double max_abs = raw.col(j).cwiseAbs().maxCoeff();
      const double floor = 1e-14 * max_abs;
      if (var <= floor * floor) {
        throw Error(ErrorCode::constant_column,
                    "center: column " + std::to_string(j) +
                        " has zero variance, cannot scale");
      }
      const double sd = std::sqrt(var);
      cd.scale_factors[j] = sd;
      cd.x.col(j) /= sd;
    }
  }
  return cd;
}

namespace {

Matrix symmetrize(const Matrix& s) {
  Matrix st = s.transpose();
  return 0.5 * (s + st);
}

}  // namespace

Matrix covariance(const CenteredData& cd) {
  const double denom = static_cast<double>(cd.n() - 1);
  Matrix s = (cd.x.transpose() * cd.x) / denom;
  return symmetrize(s);
}

Matrix gram(const CenteredData& cd) {
  const double denom = static_cast<double>(cd.n() - 1);
  Matrix k = (cd.x * cd.x.transpose()) / denom;
  return symmetrize(k);
}

double total_variance(const CenteredData& cd) {
  return cd.x.squaredNorm() / static_cast<double>(cd.n() - 1);
}

Matrix solve_spd(const Matrix& a, const Matrix& b) {
  const Index k = a.rows();
  if (a.cols() != k) {
    throw Error(ErrorCode::invalid_argument, "solve_spd: matrix is not square");
  }
  if (b.rows() != k) {
    throw Error(ErrorCode::invalid_argument,
                "solve_spd: right-hand side has mismatched rows");
  }

  const double pivot_floor = 1e-12 * (a.diagonal().sum() / static_cast<double>(k));
  Matrix l = Matrix::Zero(k, k);
  for (Index j = 0; j < k; ++j) {
    double d = a(j, j) - l.row(j).head(j).squaredNorm();
    if (d <= pivot_floor) {
      throw Error(ErrorCode::singular_submatrix,
                  "solve_spd: pivot " + std::to_string(d) + " at column " +
                      std::to_string(j) + " below floor " +
                      std::to_string(pivot_floor));
    }
    l(j, j) = std::sqrt(d);
    for (Index i = j + 1; i < k; ++i) {
      l(i, j) = (a(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / l(j, j);
    }
  }

  Matrix y = l.triangularView<Eigen::Lower>().solve(b);
  return l.transpose().triangularView<Eigen::Upper>().solve(y);
}

Matrix orthonormalize(const Matrix& m, std::vector<Index>* kept) {
  const Index n = m.rows();
  const Index k = m.cols();
  if (kept) kept->clear();

  Matrix q(n, k);
  Index r = 0;
  for (Index j = 0; j < k; ++j) {
    Vector v = m.col(j);
    const double orig_norm = v.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (Index i = 0; i < r; ++i) {
        v -= q.col(i).dot(v) * q.col(i);
      }
    }
    const double res_norm = v.norm();
    if (res_norm <= 1e-10 * orig_norm) {
      continue;  // numerically dependent on predecessors
    }
    q.col(r) = v / res_norm;
    if (kept) kept->push_back(j);
    ++r;
  }
  return q.leftCols(r);
}

}  // namespace pspca
