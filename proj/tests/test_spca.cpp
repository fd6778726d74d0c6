#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "datagen.hpp"
#include "spca.hpp"
#include "test_util.hpp"

using namespace pspca;
using testutil::abs_cosine;
using testutil::random_matrix;

namespace {

SelectionPolicy policy_of(SelectionMethod method, double alpha = 0.95,
                          Index max_card = 0) {
  SelectionPolicy policy;
  policy.method = method;
  policy.alpha = alpha;
  policy.max_cardinality = max_card;
  return policy;
}

}  // namespace

TEST_CASE("full selector reproduces PCA's first component") {
  const CenteredData cd = center(random_matrix(20, 6, 1), false);
  const PcaModel model = fit_pca(cd, 1);
  const SpcaFit fit = fit_spca(cd, 1, policy_of(SelectionMethod::full));
  REQUIRE(fit.components.size() == 1);
  CHECK(abs_cosine(fit.components[0].loadings, model.loadings.col(0)) >=
        1.0 - 1e-8);
  CHECK(fit.components[0].projection_r2 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fit.components[0].cardinality() == 6);
}

TEST_CASE("rank-1 data stops after one component") {
  Matrix x(12, 4);
  const Vector z = random_matrix(12, 1, 2);
  for (Index j = 0; j < 4; ++j) x.col(j) = (1.0 + static_cast<double>(j)) * z;
  const CenteredData cd = center(x, false);
  const SpcaFit fit = fit_spca(cd, 2, policy_of(SelectionMethod::full));
  CHECK(fit.components.size() == 1);
  CHECK(fit.adjusted_cumulative_vexp.size() == 1);
  CHECK(fit.adjusted_cumulative_vexp[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("high-SNR spiked data: planted supports recovered") {
  const SpikedTruth truth = make_block_truth(20, {10.0, 5.0}, 4, 0.05, 7);
  const Matrix x = simulate_spiked(300, 20, truth);
  const CenteredData cd = center(x, false);
  const SpcaFit fit = fit_spca(cd, 2, policy_of(SelectionMethod::forward, 0.95));
  REQUIRE(fit.components.size() == 2);
  CHECK(fit.components[0].support == truth.supports[0]);
  CHECK(fit.components[1].support == truth.supports[1]);
  const RecoveryMetrics rec = recovery_metrics(fit.components, truth);
  CHECK(rec.all_exact);
}

TEST_CASE("deflation orthogonality across components") {
  const CenteredData cd = center(random_matrix(25, 8, 3), false);
  const SpcaFit fit = fit_spca(cd, 3, policy_of(SelectionMethod::forward, 0.7));
  REQUIRE(fit.components.size() >= 2);
  for (size_t i = 0; i < fit.components.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      const Vector& si = fit.components[i].score;
      const Vector& sj = fit.components[j].score;
      CHECK(std::abs(si.dot(sj)) <= 1e-8 * si.norm() * sj.norm());
    }
  }
}

TEST_CASE("first component variance never exceeds lambda_1") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CenteredData cd = center(random_matrix(15, 6, 100 + seed), false);
    const PcaModel model = fit_pca(cd, 1);
    const SpcaFit fit =
        fit_spca(cd, 1, policy_of(SelectionMethod::forward, 0.6));
    REQUIRE(fit.components.size() == 1);
    CHECK(fit.components[0].component_variance <= model.eigenvalues[0] + 1e-9);
  }
}

TEST_CASE("adjusted cumulative vexp is nondecreasing and PCA-bounded") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CenteredData cd = center(random_matrix(18, 7, 200 + seed), false);
    const SpcaFit fit = fit_spca(cd, 3, policy_of(SelectionMethod::forward, 0.8));
    const long k = static_cast<long>(fit.components.size());
    REQUIRE(k >= 1);
    const PcaModel model = fit_pca(cd, k);
    double pca_ratio = 0.0;
    double prev = 0.0;
    for (long i = 0; i < k; ++i) {
      const double value = fit.adjusted_cumulative_vexp[static_cast<size_t>(i)];
      CHECK(value >= prev);
      prev = value;
      pca_ratio += model.eigenvalues[i] / model.total_variance;
      CHECK(value <= pca_ratio + 1e-9);
    }
    CHECK(prev <= 1.0 + 1e-9);
  }
}

TEST_CASE("scale equivariance") {
  const Matrix raw = random_matrix(14, 5, 42);
  const CenteredData cd = center(raw, false);
  const CenteredData cd2 = center(Matrix(2.0 * raw), false);
  const SelectionPolicy policy = policy_of(SelectionMethod::forward, 0.9);
  const SpcaFit a = fit_spca(cd, 2, policy);
  const SpcaFit b = fit_spca(cd2, 2, policy);
  REQUIRE(a.components.size() == b.components.size());
  for (size_t i = 0; i < a.components.size(); ++i) {
    CHECK(a.components[i].support == b.components[i].support);
    CHECK((a.components[i].loadings - b.components[i].loadings)
              .cwiseAbs()
              .maxCoeff() <= 1e-10);
    CHECK(a.components[i].projection_r2 ==
          doctest::Approx(b.components[i].projection_r2).epsilon(1e-10));
    // scores scale by c, variances by c^2
    CHECK((2.0 * a.components[i].score - b.components[i].score)
              .cwiseAbs()
              .maxCoeff() <= 1e-8 * b.components[i].score.norm());
    CHECK(4.0 * a.components[i].component_variance ==
          doctest::Approx(b.components[i].component_variance).epsilon(1e-10));
  }
}

TEST_CASE("guarantee: every alpha_reached component satisfies its target") {
  for (const double alpha : {0.5, 0.8, 0.95, 0.999}) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const CenteredData cd = center(random_matrix(12, 6, 300 + seed), false);
      const SpcaFit fit = fit_spca(cd, 2, policy_of(SelectionMethod::forward, alpha));
      for (size_t i = 0; i < fit.components.size(); ++i) {
        if (fit.traces[i].terminated_by == Termination::alpha_reached) {
          CHECK(fit.components[i].projection_r2 >= alpha);  // exact inequality
        }
      }
    }
  }
}

TEST_CASE("threshold and exhaustive selectors need a cardinality") {
  const CenteredData cd = center(random_matrix(10, 4, 9), false);
  CHECK_THROWS_AS(fit_spca(cd, 1, policy_of(SelectionMethod::threshold)), Error);
  CHECK_THROWS_AS(fit_spca(cd, 1, policy_of(SelectionMethod::exhaustive)), Error);
  const SpcaFit thr =
      fit_spca(cd, 1, policy_of(SelectionMethod::threshold, 0.95, 2));
  REQUIRE(thr.components.size() == 1);
  CHECK(thr.components[0].cardinality() == 2);
  const SpcaFit exh =
      fit_spca(cd, 1, policy_of(SelectionMethod::exhaustive, 0.95, 2));
  REQUIRE(exh.components.size() == 1);
  CHECK(exh.components[0].projection_r2 >= thr.components[0].projection_r2 - 1e-12);
}

TEST_CASE("deflation mode none recomputes the same parent") {
  const CenteredData cd = center(random_matrix(12, 5, 11), false);
  SpcaConfig config;
  config.deflation = DeflationMode::none;
  const SpcaFit fit =
      fit_spca(cd, 2, policy_of(SelectionMethod::forward, 0.9), config);
  REQUIRE(fit.components.size() == 2);
  CHECK(fit.components[0].support == fit.components[1].support);
  // the duplicate adds nothing to the adjusted cumulative variance
  CHECK(fit.adjusted_cumulative_vexp[1] ==
        doctest::Approx(fit.adjusted_cumulative_vexp[0]).epsilon(1e-12));
}

TEST_CASE("cardinality schedule overrides the policy per component") {
  const CenteredData cd = center(random_matrix(15, 6, 13), false);
  SpcaConfig config;
  config.cardinality_schedule = {2, 3};
  const SpcaFit fit = fit_spca(
      cd, 2, policy_of(SelectionMethod::threshold, 0.95, 0), config);
  REQUIRE(fit.components.size() == 2);
  CHECK(fit.components[0].cardinality() == 2);
  CHECK(fit.components[1].cardinality() == 3);
}

TEST_CASE("errors are annotated with the component index") {
  const CenteredData cd = center(random_matrix(4, 30, 15), false);
  try {
    fit_spca(cd, 1, policy_of(SelectionMethod::exhaustive, 0.95, 2));
    FAIL("expected too_large");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::too_large);
    CHECK(std::string(e.what()).find("component 0") != std::string::npos);
  }
}
