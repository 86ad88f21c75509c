#include <gtest/gtest.h>

#include <cmath>

#include "plenoptic/detect.hpp"
#include "plenoptic/entropy.hpp"
#include "plenoptic/oracle.hpp"

using namespace plenoptic;

namespace {

// |a - b| within the combined 95% half widths, optionally widened.
bool overlap(const DetectorReport& a, const DetectorReport& b, double widen = 1.0) {
  return std::abs(a.p_e_hat - b.p_e_hat) <= widen * (a.ci95_halfwidth + b.ci95_halfwidth);
}

}  // namespace

TEST(HammingDetect, HandExample) {
  const Eigen::Vector4i prev(0, 1, 0, 1);
  const Eigen::Vector4i cur(1, 0, 1, 1);
  // Up: cur(0..2) = (1,0,1) against prev(1..3) = (1,0,1), distance 0.
  // Down: cur(1..3) = (0,1,1) against prev(0..2) = (0,1,0), distance 1.
  EXPECT_EQ(hamming_detect(prev, cur), Step::up);
}

TEST(HammingDetect, AlternatingFramesTieToPriorMode) {
  const Eigen::Matrix<int, 5, 1> a(0, 1, 0, 1, 0);
  const Eigen::Matrix<int, 5, 1> b(1, 0, 1, 0, 1);
  EXPECT_EQ(hamming_detect(a, b), kPriorMode);
  EXPECT_EQ(hamming_detect(b, a), kPriorMode);
  EXPECT_EQ(hamming_detect(a, a), kPriorMode);
}

TEST(HammingDetect, NoiselessWallErrorBoundedByAlternatingEvent) {
  // Static uniform wall: errors only happen on the A_L event, and then only
  // when the true step is up (ties go down).
  for (int L : {3, 5}) {
    PeConfig cfg{WalkParams(0.5), StaticWallSpec::uniform(2), L, 1};
    const auto r = estimate_pe(cfg, DetectorKind::hamming, 100000, 7);
    EXPECT_LE(r.p_e_hat, slack_AL(2, L) + 4.0 * r.ci95_halfwidth) << L;
    EXPECT_NEAR(r.p_e_hat, 0.5 * slack_AL(2, L), 4.0 * r.ci95_halfwidth) << L;
  }
}

TEST(MmseDetect, PriorModeWithoutCorrelation) {
  const Eigen::Vector3d prev(0.3, -1.0, 2.0);
  const Eigen::Vector3d cur(-1.0, 2.0, 0.5);
  // The overlap matches an up step, but with rho ~ 0 the frames carry no
  // information and the prior decides.
  EXPECT_EQ(mmse_detect(prev, cur, 1e-9, 0.3), Step::down);
  EXPECT_EQ(mmse_detect(prev, cur, 0.99, 0.5), Step::up);
}

TEST(MmseDetect, StrongCorrelationNearlyErrorFree) {
  PeConfig cfg{WalkParams(0.5), Ar1FieldSpec(0.99), 8, 1};
  const auto r = estimate_pe(cfg, DetectorKind::mmse, 10000000, 11, 4);
  EXPECT_LT(r.p_e_hat, 1e-5);
}

TEST(MmseDetect, WeakCorrelationApproachesPrior) {
  PeConfig cfg{WalkParams(0.3), Ar1FieldSpec(1e-4), 8, 1};
  const auto r = estimate_pe(cfg, DetectorKind::mmse, 200000, 12);
  EXPECT_NEAR(r.p_e_hat, 0.3, r.ci95_halfwidth * 2.0);
}

TEST(MapDetect, AgreesWithHammingOnNoiselessUniformWall) {
  const WalkParams w(0.5);
  const RealitySpec wall = StaticWallSpec::uniform(2);
  Engine engine = make_engine(3, streams::detect);
  for (int k = 0; k < 2000; ++k) {
    Eigen::VectorXi prev(4), cur(4);
    for (int j = 0; j < 4; ++j) prev(j) = static_cast<int>(engine() & 1);
    const bool up = engine() & 1;
    if (up) {
      cur.head(3) = prev.tail(3);
      cur(3) = static_cast<int>(engine() & 1);
    } else {
      cur.tail(3) = prev.head(3);
      cur(0) = static_cast<int>(engine() & 1);
    }
    EXPECT_EQ(map_detect(prev, cur, wall, w), hamming_detect(prev, cur));
  }
}

TEST(EstimatePe, FullInnovationIsChance) {
  for (double p : {0.2, 0.5}) {
    PeConfig cfg{WalkParams(p), BscFieldSpec(0.5, 0.5), 8, 1};
    const auto r = estimate_pe(cfg, DetectorKind::map_oracle, 200000, 21);
    EXPECT_NEAR(r.p_e_hat, std::min(p, 1 - p), 2.0 * r.ci95_halfwidth) << p;
  }
}

TEST(EstimatePe, LargeAlphabetLongBlockHasNoErrors) {
  PeConfig cfg{WalkParams(0.5), StaticWallSpec::uniform(256), 9, 1};
  const auto r = estimate_pe(cfg, DetectorKind::hamming, 100000, 5);
  EXPECT_EQ(r.errors, 0u);
  EXPECT_DOUBLE_EQ(r.ci95_halfwidth, 3.0 / 100000);
}

TEST(EstimatePe, MatchesExactBayesErrorForBsc) {
  for (int L : {2, 8}) {
    const PeConfig cfg{WalkParams(0.5), BscFieldSpec(0.5, 0.05), L, 1};
    const double exact = exact_pe(cfg.walk, cfg.reality, L);
    const auto r = estimate_pe(cfg, DetectorKind::map_oracle, 400000, 31, 4);
    EXPECT_NEAR(r.p_e_hat, exact, 1.5 * r.ci95_halfwidth) << L << " exact " << exact;
  }
}

TEST(EstimatePe, ThreadCountDoesNotChangeResult) {
  const PeConfig cfg{WalkParams(0.3), BscFieldSpec(0.5, 0.1), 4, 1};
  const auto a = estimate_pe(cfg, DetectorKind::hamming, 100000, 9, 1);
  const auto b = estimate_pe(cfg, DetectorKind::hamming, 100000, 9, 3);
  const auto c = estimate_pe(cfg, DetectorKind::hamming, 100000, 9, 8);
  EXPECT_EQ(a.errors, b.errors);
  EXPECT_EQ(a.errors, c.errors);
}

TEST(EstimatePe, MapNoWorseThanHamming) {
  for (double pi : {0.0, 0.05, 0.2}) {
    const PeConfig cfg{WalkParams(0.3), BscFieldSpec(0.5, pi), 3, 1};
    const auto map = estimate_pe(cfg, DetectorKind::map_oracle, 200000, 40);
    const auto ham = estimate_pe(cfg, DetectorKind::hamming, 200000, 40);
    EXPECT_LE(map.p_e_hat, ham.p_e_hat + map.ci95_halfwidth + ham.ci95_halfwidth) << pi;
  }
}

TEST(EstimatePe, StationaryAcrossSteps) {
  const PeConfig first{WalkParams(0.5), StaticWallSpec::uniform(2), 3, 1};
  const PeConfig later{WalkParams(0.5), StaticWallSpec::uniform(2), 3, 10};
  const auto a = estimate_pe(first, DetectorKind::hamming, 100000, 50);
  const auto b = estimate_pe(later, DetectorKind::hamming, 100000, 51);
  EXPECT_TRUE(overlap(a, b)) << a.p_e_hat << " vs " << b.p_e_hat;
  const PeConfig g1{WalkParams(0.5), Ar1FieldSpec(0.5), 4, 1};
  const PeConfig g10{WalkParams(0.5), Ar1FieldSpec(0.5), 4, 10};
  const auto c = estimate_pe(g1, DetectorKind::mmse, 100000, 52);
  const auto d = estimate_pe(g10, DetectorKind::mmse, 100000, 53);
  EXPECT_TRUE(overlap(c, d)) << c.p_e_hat << " vs " << d.p_e_hat;
}

TEST(EstimatePe, DetectorMustMatchReality) {
  const PeConfig gauss{WalkParams(0.5), Ar1FieldSpec(0.9), 4, 1};
  EXPECT_THROW(estimate_pe(gauss, DetectorKind::hamming, 10, 1), std::invalid_argument);
  const PeConfig wall{WalkParams(0.5), StaticWallSpec::uniform(2), 4, 1};
  EXPECT_THROW(estimate_pe(wall, DetectorKind::mmse, 10, 1), std::invalid_argument);
  EXPECT_THROW(estimate_pe(wall, DetectorKind::hamming, 0, 1), std::invalid_argument);
}

TEST(BinomialCi, RuleOfThreeAndNormalApproximation) {
  EXPECT_DOUBLE_EQ(binomial_ci95(0, 1000), 0.003);
  EXPECT_NEAR(binomial_ci95(100, 10000), 1.96 * std::sqrt(0.01 * 0.99 / 10000), 1e-15);
}

TEST(FanoTerm, Examples) {
  EXPECT_EQ(fano_term(0.0), 0.0);
  EXPECT_EQ(fano_term(0.5), 1.0);
  EXPECT_NEAR(fano_term(1e-5), 1.81e-4, 1e-6);
}
