#pragma once

#include <cstdint>
#include <vector>

#include "matrix_core.hpp"

namespace pspca {

struct PowerConfig {
  double tol = 1e-10;
  long max_iter = 10000;
  std::uint64_t seed = 0;
};

struct EigenPair {
  double value = 0.0;
  Vector vector;    // unit norm, sign convention applied
  long iterations = 0;
  double residual = 0.0;  // ||S v - lambda v||_2 at exit
};

class NoConvergenceError : public Error {
 public:
  NoConvergenceError(long max_iter, EigenPair best_iterate, long component)
      : Error(ErrorCode::no_convergence,
              "power method did not converge within " +
                  std::to_string(max_iter) + " iterations (component " +
                  std::to_string(component) + ")"),
        best(std::move(best_iterate)),
        component(component) {}

  EigenPair best;
  long component = 0;
};

// Flips v so that its largest-magnitude entry is positive (ties broken by
// lowest index). Makes power-method output deterministic up to bit level.
void apply_sign_convention(Vector& v);

// Dominant eigenpair of a symmetric PSD matrix by power iteration. Converged
// when the relative Rayleigh-quotient change drops below tol AND the residual
// is <= tol * lambda. Deterministic given cfg.seed.
EigenPair leading_eigenpair(const Matrix& s, const PowerConfig& cfg = {});

// Top-k eigenpairs via Hotelling deflation (S <- S - lambda v v') on an
// explicit copy. Stops early once a deflated eigenvalue falls to
// <= 1e-12 * lambda_1.
std::vector<EigenPair> top_k_eigenpairs(const Matrix& s, long k,
                                        const PowerConfig& cfg = {});

struct GramLeading {
  EigenPair pair;  // eigenvalue + loading vector (length p)
  Vector score;    // t = X v, length n
};

// p >> n path: iterates on K = XX'/(n-1) and recovers the loading
// v = X'u / ||X'u|| and score t = X v. Same eigenvalue as the covariance
// path up to numerical error.
GramLeading leading_eigenpair_gram(const CenteredData& cd,
                                   const PowerConfig& cfg = {});

}  // namespace pspca
