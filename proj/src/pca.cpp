#include "pca.hpp"

#include <algorithm>

namespace pspca {

bool use_covariance_path(Index n, Index p) {
  return p <= std::max<Index>(n, 2048);
}

GramLeading leading_pc(const CenteredData& cd, const PowerConfig& cfg) {
  if (use_covariance_path(cd.n(), cd.p())) {
    const Matrix s = covariance(cd);
    GramLeading out;
    out.pair = leading_eigenpair(s, cfg);
    out.score = cd.x * out.pair.vector;
    return out;
  }
  return leading_eigenpair_gram(cd, cfg);
}

namespace {

// Shared sequential extraction with a configurable spectral cutoff.
std::vector<EigenPair> extract_cov_path(const Matrix& s, long kmax,
                                        double rel_cutoff,
                                        const PowerConfig& cfg) {
  std::vector<EigenPair> pairs;
  Matrix deflated = s;
  for (long i = 0; i < kmax; ++i) {
    EigenPair pair;
    try {
      pair = leading_eigenpair(deflated, cfg);
    } catch (const NoConvergenceError& e) {
      if (!pairs.empty() && e.best.value <= rel_cutoff * pairs.front().value) break;
      throw NoConvergenceError(cfg.max_iter, e.best, i);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::zero_matrix && !pairs.empty()) break;
      throw;
    }
    if (!pairs.empty() && pair.value <= rel_cutoff * pairs.front().value) break;
    deflated -= pair.value * (pair.vector * pair.vector.transpose());
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::vector<EigenPair> extract_gram_path(const CenteredData& cd, long kmax,
                                         double rel_cutoff,
                                         const PowerConfig& cfg) {
  // Run deflation on K = XX'/(n-1), then map each (lambda, u) to the
  // covariance eigenvector v = X'u / ||X'u||.
  const Matrix k = gram(cd);
  std::vector<EigenPair> gram_pairs = extract_cov_path(k, kmax, rel_cutoff, cfg);
  std::vector<EigenPair> pairs;
  pairs.reserve(gram_pairs.size());
  for (const EigenPair& gp : gram_pairs) {
    Vector loading = cd.x.transpose() * gp.vector;
    const double norm = loading.norm();
    if (norm == 0.0) break;
    loading /= norm;
    apply_sign_convention(loading);
    pairs.push_back(EigenPair{gp.value, std::move(loading), gp.iterations,
                              gp.residual});
  }
  return pairs;
}

}  // namespace

PcaModel fit_pca(const CenteredData& cd, long k, const PowerConfig& cfg) {
  const Index n = cd.n();
  const Index p = cd.p();
  const long kmax = static_cast<long>(std::min<Index>(n - 1, p));
  const bool auto_k = (k == 0);
  if (!auto_k && (k < 1 || k > kmax)) {
    throw Error(ErrorCode::invalid_argument,
                "fit_pca: k must be in [1, min(n-1, p)] = [1, " +
                    std::to_string(kmax) + "]");
  }
  // Auto mode keeps only eigenvalues above 1e-8 * lambda_1; explicit k is cut
  // short only once the spectrum is numerically exhausted.
  const double rel_cutoff = auto_k ? 1e-8 : 1e-12;
  const long want = auto_k ? kmax : k;

  std::vector<EigenPair> pairs =
      use_covariance_path(n, p) ? extract_cov_path(covariance(cd), want, rel_cutoff, cfg)
                                : extract_gram_path(cd, want, rel_cutoff, cfg);

  PcaModel model;
  model.n = n;
  model.p = p;
  model.k = static_cast<Index>(pairs.size());
  model.scaled = cd.scaled;
  model.total_variance = total_variance(cd);
  model.loadings.resize(p, model.k);
  model.eigenvalues.resize(model.k);
  for (Index i = 0; i < model.k; ++i) {
    model.loadings.col(i) = pairs[static_cast<size_t>(i)].vector;
    model.eigenvalues[i] = pairs[static_cast<size_t>(i)].value;
  }
  model.scores = cd.x * model.loadings;
  return model;
}

Vector explained_variance_ratio(const PcaModel& model) {
  return model.eigenvalues / model.total_variance;
}

}  // namespace pspca
