#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "datagen.hpp"
#include "pca.hpp"
#include "test_util.hpp"

using namespace pspca;
using testutil::abs_cosine;

TEST_CASE("block truth layout") {
  const SpikedTruth truth = make_block_truth(10, {4.0, 2.0}, 3, 0.5, 1);
  CHECK(truth.p() == 10);
  CHECK(truth.m() == 2);
  CHECK(truth.supports[0] == IndexSet{{0, 1, 2}});
  CHECK(truth.supports[1] == IndexSet{{3, 4, 5}});
  CHECK(truth.true_loadings.col(0).norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(truth.true_loadings(0, 0) ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(truth.true_loadings(3, 0) == 0.0);
}

TEST_CASE("truth validation rejects bad configurations") {
  CHECK_THROWS_AS(make_block_truth(5, {4.0, 2.0}, 3, 0.1, 1), Error);  // no room
  CHECK_THROWS_AS(make_block_truth(10, {2.0, 4.0}, 3, 0.1, 1), Error);  // increasing
  CHECK_THROWS_AS(make_block_truth(10, {4.0, -1.0}, 3, 0.1, 1), Error);

  SpikedTruth overlap = make_block_truth(10, {4.0, 2.0}, 3, 0.1, 1);
  overlap.supports[1] = IndexSet{{2, 3, 4}};  // collides with support 0
  CHECK_THROWS_AS(validate_truth(overlap), Error);
}

TEST_CASE("noiseless rank-1 model") {
  const SpikedTruth truth = make_block_truth(8, {5.0}, 3, 0.0, 3);
  const Matrix x = simulate_spiked(60, 8, truth);
  // exactly rank 1: every column is a multiple of the same vector
  const CenteredData cd = center(x, false);
  const PcaModel model = fit_pca(cd, 0);
  REQUIRE(model.k == 1);
  CHECK(abs_cosine(model.loadings.col(0), truth.true_loadings.col(0)) >=
        1.0 - 1e-6);
}

TEST_CASE("same seed gives bitwise-identical data") {
  const SpikedTruth truth = make_block_truth(12, {6.0, 3.0}, 2, 0.3, 9);
  const Matrix a = simulate_spiked(40, 12, truth);
  const Matrix b = simulate_spiked(40, 12, truth);
  CHECK(a == b);
  SpikedTruth other = truth;
  other.seed = 10;
  CHECK(simulate_spiked(40, 12, other) != a);
}

TEST_CASE("sample covariance concentrates around the population covariance") {
  const Index n = 10000;
  const Index p = 20;
  const double sigma = 0.5;
  const SpikedTruth truth = make_block_truth(p, {8.0, 4.0}, 4, sigma, 11);
  const Matrix x = simulate_spiked(n, p, truth);
  const Matrix s = covariance(center(x, false));
  Matrix pop = sigma * sigma * Matrix::Identity(p, p);
  for (Index i = 0; i < truth.m(); ++i) {
    pop += truth.spike_variances[i] *
           (truth.true_loadings.col(i) * truth.true_loadings.col(i).transpose());
  }
  const double bound = 5.0 * std::sqrt(std::log(static_cast<double>(p)) /
                                       static_cast<double>(n)) *
                       (truth.spike_variances[0] + sigma * sigma);
  CHECK((s - pop).cwiseAbs().maxCoeff() <= bound);
}

TEST_CASE("simulate validates inputs") {
  const SpikedTruth truth = make_block_truth(10, {4.0, 2.0}, 3, 0.1, 1);
  CHECK_THROWS_AS(simulate_spiked(3, 10, truth), Error);   // m > n/2
  CHECK_THROWS_AS(simulate_spiked(40, 12, truth), Error);  // p mismatch
}

TEST_CASE("recovery metrics: self match") {
  const SpikedTruth truth = make_block_truth(12, {5.0, 2.5}, 3, 0.1, 13);
  std::vector<SparseComponent> est;
  for (Index i = 0; i < truth.m(); ++i) {
    SparseComponent comp;
    comp.support = truth.supports[static_cast<size_t>(i)];
    comp.loadings = truth.true_loadings.col(i);
    comp.parent_index = i;
    est.push_back(std::move(comp));
  }
  const RecoveryMetrics metrics = recovery_metrics(est, truth);
  REQUIRE(metrics.pairs.size() == 2);
  CHECK(metrics.all_exact);
  for (const RecoveryPair& pair : metrics.pairs) {
    CHECK(pair.support_precision == 1.0);
    CHECK(pair.support_recall == 1.0);
    CHECK(pair.cosine == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pair.exact_support);
  }
  // order and sign are not identifiable; a swapped, sign-flipped estimate
  // still matches exactly
  std::swap(est[0], est[1]);
  est[0].loadings = -est[0].loadings;
  const RecoveryMetrics swapped = recovery_metrics(est, truth);
  CHECK(swapped.all_exact);
}

TEST_CASE("recovery metrics: disjoint estimate misses") {
  const SpikedTruth truth = make_block_truth(12, {5.0}, 3, 0.1, 14);
  SparseComponent comp;
  comp.support = IndexSet{{9, 10, 11}};
  comp.loadings = Vector::Zero(12);
  comp.loadings[9] = 1.0;
  const RecoveryMetrics metrics = recovery_metrics({comp}, truth);
  REQUIRE(metrics.pairs.size() == 1);
  CHECK(metrics.pairs[0].support_precision == 0.0);
  CHECK(metrics.pairs[0].support_recall == 0.0);
  CHECK_FALSE(metrics.all_exact);
}

TEST_CASE("recovery metrics: right support, perturbed direction") {
  const SpikedTruth truth = make_block_truth(9, {5.0}, 3, 0.1, 15);
  SparseComponent comp;
  comp.support = truth.supports[0];
  Vector loadings = Vector::Zero(9);
  loadings[0] = 0.8;
  loadings[1] = 0.5;
  loadings[2] = 0.2;
  comp.loadings = loadings / loadings.norm();
  const RecoveryMetrics metrics = recovery_metrics({comp}, truth);
  REQUIRE(metrics.pairs.size() == 1);
  CHECK(metrics.pairs[0].support_precision == 1.0);
  CHECK(metrics.pairs[0].support_recall == 1.0);
  CHECK(metrics.pairs[0].exact_support);
  CHECK(metrics.pairs[0].cosine < 1.0 - 1e-3);
  CHECK(metrics.all_exact);
}
