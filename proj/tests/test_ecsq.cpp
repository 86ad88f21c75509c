#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "plenoptic/ecsq.hpp"
#include "plenoptic/entropy.hpp"

using namespace plenoptic;

TEST(Quantizer, IndexAndReconstruct) {
  const Quantizer q = uniform_quantizer(1.0, -2.0, 2.0);
  ASSERT_EQ(q.cells(), 5);
  EXPECT_EQ(q.index(-10.0), 0);
  EXPECT_EQ(q.index(10.0), 4);
  EXPECT_EQ(q.index(0.2), 2);
  EXPECT_DOUBLE_EQ(q.quantize(0.7), 1.0);
  EXPECT_DOUBLE_EQ(q.quantize(-1.4), -1.0);
  EXPECT_NEAR(q.rate(), std::log2(5.0), 1e-15);
}

TEST(DesignEcsq, HighRateMatchesUniformQuantizerTheory) {
  for (double lambda : {1e-4, 3e-4, 1e-3}) {
    const auto d = design_ecsq_gaussian(1.0, lambda);
    ASSERT_LE(d.distortion, 0.01);
    const double predicted = gaussian_diff_entropy(1.0) - 0.5 * std::log2(12.0 * d.distortion);
    EXPECT_NEAR(d.rate, predicted, 0.3) << lambda;
  }
}

TEST(DesignEcsq, SymmetricSourceGivesSymmetricCodebook) {
  for (double lambda : {0.003, 0.03, 0.3}) {
    const auto d = design_ecsq_gaussian(1.0, lambda);
    const auto& y = d.quantizer.levels;
    const std::size_t n = y.size();
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(y[k], -y[n - 1 - k], 1e-6) << lambda << " " << k;
    const auto& th = d.quantizer.thresholds;
    for (std::size_t k = 0; k < th.size(); ++k) EXPECT_NEAR(th[k], -th[th.size() - 1 - k], 1e-6);
  }
}

TEST(DesignEcsq, HugeLambdaCollapsesToOneCell) {
  const auto d = design_ecsq_gaussian(1.0, 1e6);
  EXPECT_EQ(d.quantizer.cells(), 1);
  EXPECT_EQ(d.rate, 0.0);
  EXPECT_NEAR(d.distortion, 1.0, 1e-6);
  EXPECT_NEAR(d.quantizer.levels.front(), 0.0, 1e-9);
  EXPECT_GT(d.deleted_cells, 0);
}

TEST(DesignEcsq, ObjectiveNonincreasingAndConditionsHold) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> s(50000);
  // Skewed source: the positive half is stretched.
  for (double& v : s) {
    v = g(rng);
    if (v > 0) v *= 1.5;
  }
  for (double lambda : {0.001, 0.01, 0.1}) {
    const auto d = design_ecsq(s, lambda);
    for (std::size_t i = 1; i < d.objective.size(); ++i)
      EXPECT_LE(d.objective[i], d.objective[i - 1] * (1 + 1e-12) + 1e-15) << lambda << " " << i;
    const Quantizer& q = d.quantizer;
    // Entropy-biased nearest-cell rule: each threshold is where the
    // neighbouring costs (x - y)^2 + lambda l are equal.
    for (std::size_t k = 0; k + 1 < q.levels.size(); ++k) {
      const double x = q.thresholds[k];
      const double a = (x - q.levels[k]) * (x - q.levels[k]) - lambda * std::log2(q.index_pmf[k]);
      const double b = (x - q.levels[k + 1]) * (x - q.levels[k + 1]) - lambda * std::log2(q.index_pmf[k + 1]);
      EXPECT_NEAR(a, b, 1e-3 * std::max(1.0, std::abs(a))) << lambda << " " << k;
    }
    // Reported statistics agree with re-quantizing the training set.
    double mse = 0.0;
    std::vector<int> idx;
    for (double v : s) {
      mse += (v - q.quantize(v)) * (v - q.quantize(v));
      idx.push_back(q.index(v));
    }
    EXPECT_NEAR(mse / s.size(), d.distortion, 1e-12);
    std::vector<double> pmf(q.levels.size(), 0.0);
    for (int i : idx) pmf[static_cast<std::size_t>(i)] += 1.0 / s.size();
    for (std::size_t k = 0; k < pmf.size(); ++k) EXPECT_NEAR(pmf[k], q.index_pmf[k], 1e-12);
  }
}

TEST(DesignEcsq, RejectsBadInput) {
  std::vector<double> s{1.0, 2.0};
  EXPECT_THROW(design_ecsq(s, 0.0), std::invalid_argument);
  EXPECT_THROW(design_ecsq(std::vector<double>{}, 0.1), std::invalid_argument);
  EXPECT_THROW(design_ecsq_gaussian(-1.0, 0.1), std::invalid_argument);
}

TEST(DesignEcsq, RateDistortionTradeoff) {
  double prev_rate = 1e9, prev_d = -1.0;
  for (double lambda : {1e-3, 1e-2, 1e-1, 1.0}) {
    const auto d = design_ecsq_gaussian(1.0, lambda);
    EXPECT_LT(d.rate, prev_rate);
    EXPECT_GT(d.distortion, prev_d);
    // Never better than the Gaussian rate-distortion function.
    EXPECT_GE(d.rate, 0.5 * std::log2(1.0 / std::min(1.0, d.distortion)) - 1e-9);
    prev_rate = d.rate;
    prev_d = d.distortion;
  }
}
