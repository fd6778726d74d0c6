#include "eigen_power.hpp"

#include <cmath>

#include "rng.hpp"

namespace pspca {

void apply_sign_convention(Vector& v) {
  Index arg = 0;
  double best = -1.0;
  for (Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > best) {
      best = mag;
      arg = i;
    }
  }
  if (v[arg] < 0.0) v = -v;
}

namespace {

Vector random_unit_vector(Index dim, std::uint64_t seed) {
  NormalSampler sampler(seed);
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) v[i] = sampler.normal();
  const double norm = v.norm();
  return v / norm;
}

void validate_config(const PowerConfig& cfg) {
  if (!(cfg.tol > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "power: tol must be > 0");
  }
  if (cfg.max_iter < 1) {
    throw Error(ErrorCode::invalid_argument, "power: max_iter must be >= 1");
  }
}

EigenPair leading_eigenpair_impl(const Matrix& s, const PowerConfig& cfg,
                                 long component) {
  validate_config(cfg);
  const Index dim = s.rows();
  if (dim < 1 || s.cols() != dim) {
    throw Error(ErrorCode::invalid_argument, "power: matrix must be square");
  }
  if (s.cwiseAbs().maxCoeff() == 0.0) {
    throw Error(ErrorCode::zero_matrix, "power: zero matrix has no leading pair");
  }

  // Deterministic start; redraw if the first iterate is annihilated.
  Vector v;
  Vector w;
  for (std::uint64_t attempt = 0;; ++attempt) {
    v = random_unit_vector(dim, cfg.seed + attempt);
    w = s * v;
    if (w.norm() > 1e-14) break;
    if (attempt >= 64) {
      throw Error(ErrorCode::zero_matrix,
                  "power: start vectors keep landing in the null space");
    }
  }

  double lambda = v.dot(w);
  double residual = (w - lambda * v).norm();
  bool converged = false;
  long iters = 0;
  while (iters < cfg.max_iter) {
    ++iters;
    const double wn = w.norm();
    if (wn == 0.0) {
      // v is an exact null vector: a valid eigenpair with eigenvalue 0.
      lambda = 0.0;
      residual = 0.0;
      converged = true;
      break;
    }
    const Vector v_next = w / wn;
    const Vector w_next = s * v_next;
    const double lambda_next = v_next.dot(w_next);
    const double res_next = (w_next - lambda_next * v_next).norm();
    const double scale = std::abs(lambda_next);
    const bool rayleigh_ok = std::abs(lambda_next - lambda) <= cfg.tol * scale;
    const bool residual_ok = res_next <= cfg.tol * scale;
    v = v_next;
    w = w_next;
    lambda = lambda_next;
    residual = res_next;
    if (rayleigh_ok && residual_ok) {
      converged = true;
      break;
    }
  }

  v /= v.norm();
  apply_sign_convention(v);
  EigenPair pair{lambda, v, iters, residual};
  if (!converged) {
    throw NoConvergenceError(cfg.max_iter, std::move(pair), component);
  }
  return pair;
}

}  // namespace

EigenPair leading_eigenpair(const Matrix& s, const PowerConfig& cfg) {
  return leading_eigenpair_impl(s, cfg, 0);
}

std::vector<EigenPair> top_k_eigenpairs(const Matrix& s, long k,
                                        const PowerConfig& cfg) {
  const Index dim = s.rows();
  if (k < 1 || k > dim) {
    throw Error(ErrorCode::invalid_argument,
                "top_k_eigenpairs: k must be in [1, dim]");
  }
  std::vector<EigenPair> pairs;
  Matrix deflated = s;
  for (long i = 0; i < k; ++i) {
    EigenPair pair;
    try {
      pair = leading_eigenpair_impl(deflated, cfg, i);
    } catch (const NoConvergenceError& e) {
      if (!pairs.empty() && e.best.value <= 1e-12 * pairs.front().value) {
        break;  // stalled on a spectrum tail that would be dropped anyway
      }
      throw;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::zero_matrix && !pairs.empty()) {
        break;  // deflation annihilated the matrix
      }
      throw;
    }
    if (!pairs.empty() && pair.value <= 1e-12 * pairs.front().value) {
      break;  // spectrum exhausted
    }
    deflated -= pair.value * (pair.vector * pair.vector.transpose());
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

GramLeading leading_eigenpair_gram(const CenteredData& cd,
                                   const PowerConfig& cfg) {
  const Matrix k = gram(cd);
  EigenPair gram_pair = leading_eigenpair_impl(k, cfg, 0);

  Vector loading = cd.x.transpose() * gram_pair.vector;
  const double norm = loading.norm();
  if (norm == 0.0) {
    throw Error(ErrorCode::zero_matrix,
                "gram path: recovered loading is identically zero");
  }
  loading /= norm;
  apply_sign_convention(loading);

  GramLeading out;
  out.pair = EigenPair{gram_pair.value, loading, gram_pair.iterations,
                       gram_pair.residual};
  out.score = cd.x * loading;
  return out;
}

}  // namespace pspca
