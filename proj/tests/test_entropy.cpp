#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "plenoptic/entropy.hpp"

using namespace plenoptic;

namespace {

const double kPhi1 = 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e);

// Independent values from tests/oracles/series_oracle.py (mpmath, 40 digits).
constexpr double kBscRateHalfL8Pi01 = 4.1031624596854217;
constexpr double kAr1RateHalfL8Rho099 = -5.0958772513845791;
constexpr double kAr1ReturnTermP01Rho05 = 0.40099301254194012;
constexpr double kJensenP01Rho05 = 0.40101785276256798;
// (bound(M) - limit) sqrt(M) at p_w = 0.5, |X| = 256, M = 1e4; from a direct sum
// of binom(2n, n) / 4^n.
constexpr double kScaledExcessHalfM1e4 = 12.686472114702587;

double bsc_rate(double p_w, double p_i, int L, double tol = kDefaultSeriesTolerance) {
  return dynamic_cond_rate_bsc({WalkParams(p_w), BscFieldSpec(0.5, p_i), L, tol}).value;
}

SeriesResult ar1_rate(double p_w, double rho, int L) {
  return dynamic_cond_rate_ar1({WalkParams(p_w), Ar1FieldSpec(rho), L, kDefaultSeriesTolerance});
}

}  // namespace

TEST(BinaryEntropy, Examples) {
  EXPECT_EQ(binary_entropy(0.5), 1.0);
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_NEAR(binary_entropy(0.11), 0.49993, 1e-4);
  EXPECT_THROW(binary_entropy(1.5), std::domain_error);
}

TEST(DiscreteEntropy, Examples) {
  EXPECT_NEAR(discrete_entropy(std::vector<double>(256, 1.0 / 256)), 8.0, 1e-12);
  EXPECT_EQ(discrete_entropy(std::vector<double>{0.0, 1.0, 0.0}), 0.0);
  EXPECT_NEAR(discrete_entropy(std::vector<double>{0.9, 0.1}), binary_entropy(0.1), 1e-15);
  EXPECT_NEAR(discrete_entropy(Eigen::Vector4d::Constant(0.25)), 2.0, 1e-15);
  EXPECT_THROW(discrete_entropy(std::vector<double>{0.5, 0.6}), std::invalid_argument);
}

TEST(GaussianDiffEntropy, Examples) {
  EXPECT_NEAR(gaussian_diff_entropy(1.0), 2.0471, 1e-3);
  EXPECT_NEAR(gaussian_diff_entropy(4.0), gaussian_diff_entropy(1.0) + 1.0, 1e-14);
  const double tiny = gaussian_diff_entropy(1e-12);
  EXPECT_TRUE(std::isfinite(tiny));
  EXPECT_LT(tiny, -15.0);
  EXPECT_THROW(gaussian_diff_entropy(0.0), std::domain_error);
}

TEST(StaticBounds, Examples) {
  const auto sym = static_bounds(WalkParams(0.5), 8.0, 0.0);
  EXPECT_EQ(sym.lower, 1.0);
  EXPECT_EQ(sym.upper, 1.0);
  const auto pan = static_bounds(WalkParams(0.0), 1.0, 0.0);
  EXPECT_EQ(pan.lower, 1.0);
  EXPECT_EQ(pan.upper, 1.0);
  const auto quarter = static_bounds(WalkParams(0.25), 8.0, binary_entropy(1e-12));
  EXPECT_NEAR(quarter.upper, 4.8113, 1e-4);
  EXPECT_NEAR(quarter.terms.innovation_term, 4.0, 1e-15);
  EXPECT_NEAR(quarter.terms.trajectory_entropy, binary_entropy(0.25), 1e-15);
}

TEST(StaticBounds, LowerNeverExceedsUpperAndClampsAtZero) {
  for (double p = 0.0; p <= 0.5; p += 0.05)
    for (double hx : {0.0, 1.0, 8.0})
      for (double f : {0.0, 0.01, 0.5, 5.0}) {
        const auto r = static_bounds(WalkParams(p), hx, f);
        EXPECT_LE(r.lower, r.upper);
        EXPECT_GE(r.lower, 0.0);
        EXPECT_NEAR(r.upper - std::max(0.0, r.upper - f), r.gap(), 1e-15);
      }
}

TEST(StaticBoundsAt, ConvergesToStationaryBounds) {
  for (double p : {0.0, 0.1, 0.3}) {
    const WalkParams w(p);
    const auto a = static_bounds_at(w, 1.0, 0.0, 20000);
    const auto s = static_bounds(w, 1.0, 0.0);
    EXPECT_NEAR(a.lower, s.lower, 1e-6);
    EXPECT_NEAR(a.upper, s.upper, 1e-3);
    EXPECT_LE(a.lower, a.upper + 1e-15);
  }
}

TEST(SlackAL, Examples) {
  EXPECT_DOUBLE_EQ(slack_AL(2, 9), 1.0 / 256);
  EXPECT_DOUBLE_EQ(slack_AL(2, 2), 0.5);
  EXPECT_DOUBLE_EQ(slack_AL(256, 2), 1.0 / 256);
  EXPECT_DOUBLE_EQ(slack_AL(StaticWallSpec::uniform(4), 3), 1.0 / 16);
  EXPECT_THROW(slack_AL(StaticWallSpec::bernoulli(0.3), 3), std::invalid_argument);
}

TEST(StaticBoundsAL, OddUniformUsesAlternatingSlack) {
  const WalkParams w(0.3);
  const auto odd = static_bounds_AL(w, StaticWallSpec::uniform(2), 9, 0.2);
  EXPECT_TRUE(odd.used_AL);
  EXPECT_NEAR(odd.report.gap(), binary_entropy(0.3) / 256, 1e-15);
  const auto even = static_bounds_AL(w, StaticWallSpec::uniform(2), 8, 0.2);
  EXPECT_FALSE(even.used_AL);
  EXPECT_NEAR(even.report.gap(), 0.2, 1e-15);
  const auto skew = static_bounds_AL(w, StaticWallSpec::bernoulli(0.3), 9, 0.1);
  EXPECT_FALSE(skew.used_AL);
}

TEST(MemoryBound, Examples) {
  const WalkParams half(0.5);
  EXPECT_DOUBLE_EQ(conditional_bound_memory(half, 8.0, 1), 9.0);
  EXPECT_NEAR(conditional_bound_memory(half, 8.0, 4), 5.75, 1e-14);
  const WalkParams tenth(0.1);
  EXPECT_LT(conditional_bound_memory(tenth, 8.0, 5) - conditional_bound_memory(tenth, 8.0, 20), 0.35);
}

TEST(MemoryBound, NonincreasingInM) {
  for (double p : {0.0, 0.05, 0.2, 0.35, 0.5}) {
    const auto curve = conditional_bound_memory_curve(WalkParams(p), 8.0, 10000);
    for (std::size_t m = 1; m < curve.size(); ++m) EXPECT_LE(curve[m], curve[m - 1] + 1e-13) << p << " " << m;
    EXPECT_GE(curve.back(), static_bounds(WalkParams(p), 8.0, 0.0).upper - 1e-12);
  }
}

TEST(MemoryBound, ExcessOverLimitIsAveragedReturnMass) {
  // bound(M) - limit = H_X (1/M) sum_{i<=M} (2 p_w - P{R^i}) exactly. The
  // excess therefore decays like 1/M for p_w < 0.5 and like M^{-1/2} at 0.5.
  const int M = 10000;
  for (double p : {0.1, 0.3, 0.5}) {
    const WalkParams w(p);
    const auto table = RecurrenceTable::build(w, M);
    double mass = 0.0;
    for (int i = 1; i <= M; ++i) mass += table.tail_mass(w, i);
    const double excess = conditional_bound_memory(w, 8.0, M) - static_bounds(w, 8.0, 0.0).upper;
    EXPECT_NEAR(excess, 8.0 * mass / M, 1e-10) << p;
    if (p < 0.5) {
      const double half = conditional_bound_memory(w, 8.0, M / 2) - static_bounds(w, 8.0, 0.0).upper;
      EXPECT_NEAR(M * excess, M / 2 * half, 0.05) << p;
    }
  }
  // Symmetric walk: 1 - P{R^i} ~ sqrt(2 / (pi i)), so the excess times sqrt(M)
  // approaches 8 * 2 sqrt(2 / pi), with a correction that shrinks like M^{-1/2}.
  const WalkParams half(0.5);
  auto scaled = [&](int m) { return (conditional_bound_memory(half, 8.0, m) - 1.0) * std::sqrt(static_cast<double>(m)); };
  EXPECT_NEAR(scaled(M), kScaledExcessHalfM1e4, 1e-9);
  const double limit = 16.0 * std::sqrt(2.0 / std::numbers::pi);
  const double ratio = (scaled(M) - limit) / (scaled(4 * M) - limit);
  EXPECT_NEAR(ratio, 2.0, 0.05);
}

TEST(DynamicBsc, ZeroInnovationIsStatic) {
  for (double p : {0.0, 0.1, 0.5}) EXPECT_DOUBLE_EQ(bsc_rate(p, 0.0, 8), 1.0 - 2.0 * p);
}

TEST(DynamicBsc, SmallInnovationApproachesStatic) {
  const double p = 0.25;
  double prev = std::abs(bsc_rate(p, 1e-2, 8) - 0.5);
  for (double pi : {1e-3, 1e-4, 1e-5, 1e-6, 1e-7}) {
    const double d = std::abs(bsc_rate(p, pi, 8) - 0.5);
    EXPECT_LT(d, prev);
    prev = d;
  }
  // Leading term is (L - 1) H(p_i), about 1.7e-5 at p_i = 1e-7.
  EXPECT_LT(prev, 1e-4);
}

TEST(DynamicBsc, FullInnovationGivesL) {
  for (double p : {0.05, 0.3, 0.5})
    for (int L : {2, 8}) EXPECT_NEAR(bsc_rate(p, 0.5, L), L, 1e-12);
}

TEST(DynamicBsc, OracleValue) {
  const auto r = dynamic_cond_rate_bsc({WalkParams(0.5), BscFieldSpec(0.5, 0.1), 8, 1e-12});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, kBscRateHalfL8Pi01, 1e-6);
  EXPECT_LE(std::abs(r.value - kBscRateHalfL8Pi01), r.tail_bound + 1e-12);
}

TEST(DynamicBsc, IncreasingInInnovation) {
  for (double p : {0.05, 0.5}) {
    double prev = -1.0;
    for (int k = 1; k <= 50; ++k) {
      const double v = bsc_rate(p, 0.01 * k, 8);
      EXPECT_GT(v, prev);
      prev = v;
    }
  }
}

TEST(DynamicAr1, MemorylessLimit) {
  EXPECT_NEAR(ar1_rate(0.3, 1e-6, 8).value, 8.0 * kPhi1, 1e-9);
  EXPECT_NEAR(ar1_rate(0.5, 1e-6, 2).value, 2.0 * kPhi1, 1e-9);
}

TEST(DynamicAr1, PanningHasNoSeries) {
  const auto r = ar1_rate(0.0, 0.9, 8);
  EXPECT_EQ(r.terms, 0);
  EXPECT_NEAR(r.value, kPhi1 + 7.0 * gaussian_diff_entropy(1.0 - 0.81), 1e-13);
}

TEST(DynamicAr1, OracleValue) {
  const auto r = ar1_rate(0.5, 0.99, 8);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, kAr1RateHalfL8Rho099, 1e-8);
}

TEST(DynamicAr1, AgreesWithBruteForceSummation) {
  // Sum phi(1 - rho^{4k}) P{T^{2k}} directly for k <= 1e5; the remaining
  // return mass carries phi(1) because rho^{4k} underflows long before.
  const WalkParams w(0.5);
  const double rho = 0.99;
  const int K = 100000;
  long double sum = 0.0L, mass = 0.0L;
  long double a = 2.0L * 0.25L;
  for (int k = 1; k <= K; ++k) {
    sum += a * static_cast<long double>(gaussian_diff_entropy(1.0 - std::pow(rho, 4.0 * k)));
    mass += a;
    a *= 2.0L * (2.0L * k - 1.0L) / (k + 1.0L) * 0.25L;
  }
  const double brute = static_cast<double>(sum + (1.0L - mass) * kPhi1);
  const auto series = ar1_return_term(w, rho, 1e-12);
  EXPECT_NEAR(series.value, brute, 1e-9);
  EXPECT_LE(series.value, jensen_upper_ar1(w, rho));
}

TEST(DynamicAr1, RejectsUnitCorrelation) {
  EXPECT_THROW(ar1_return_term(WalkParams(0.5), 1.0), std::domain_error);
  DynamicRateInputs in{WalkParams(0.5), BscFieldSpec(0.5, 0.1), 8, 1e-9};
  EXPECT_THROW(dynamic_cond_rate_ar1(in), std::invalid_argument);
}

TEST(Jensen, Examples) {
  for (double p : {0.1, 0.3, 0.5}) {
    const WalkParams w(p);
    EXPECT_NEAR(jensen_upper_ar1(w, 0.0), 2.0 * p * kPhi1, 1e-13);
    EXPECT_NEAR(ar1_return_term(w, 0.0).value, 2.0 * p * kPhi1, 1e-13);
  }
  for (double rho : {0.3, 0.7, 0.95})
    EXPECT_NEAR(jensen_upper_ar1(WalkParams(0.5), rho), gaussian_diff_entropy(std::sqrt(1 - std::pow(rho, 4))), 1e-13);
  const WalkParams tenth(0.1);
  const double exact = ar1_return_term(tenth, 0.5, 1e-13).value;
  const double jensen = jensen_upper_ar1(tenth, 0.5);
  EXPECT_NEAR(exact, kAr1ReturnTermP01Rho05, 1e-10);
  EXPECT_NEAR(jensen, kJensenP01Rho05, 1e-12);
  EXPECT_GE(jensen, exact);
  EXPECT_LT(jensen - exact, 0.01);
}

TEST(Jensen, DominatesExactSeriesOnGrid) {
  for (int i = 1; i <= 20; ++i) {
    const WalkParams w(0.025 * i);
    for (int j = 0; j < 20; ++j) {
      const double rho = 0.05 * j;
      const auto s = ar1_return_term(w, rho, 1e-12);
      EXPECT_GE(jensen_upper_ar1(w, rho), s.value - s.tail_bound - 1e-12) << w.p_w << " " << rho;
    }
  }
}

TEST(CatalanIdentity, Examples) {
  const auto a = catalan_sum_identity_check(WalkParams(0.5), 0.0);
  EXPECT_LE(a.residual, 1e-10);
  EXPECT_NEAR(a.closed_form, 1.0, 1e-15);
  const auto b = catalan_sum_identity_check(WalkParams(0.3), 0.9);
  EXPECT_LE(b.residual, 1e-8);
  const auto c = catalan_sum_identity_check(WalkParams(1e-9), 0.7);
  EXPECT_NEAR(c.series, 0.0, 1e-8);
  EXPECT_NEAR(c.closed_form, 0.0, 1e-8);
  EXPECT_LE(c.residual, 1e-12);
}

TEST(CatalanIdentity, ResidualWithinCertifiedTail) {
  for (int i = 1; i <= 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const auto r = catalan_sum_identity_check(WalkParams(0.05 * i), 0.099 * j);
      EXPECT_LE(r.residual, r.tail_bound + 1e-12) << i << " " << j;
    }
}

TEST(ReturnSeries, TailBoundAndIterationCap) {
  const WalkParams w(0.5);
  // g(k) = 1/k decays too slowly against the k^{-1/2} return tail to stop early.
  const auto capped = return_series(w, 0.0, [](long long k) { return 1.0 / static_cast<double>(k); }, 1e-15, 1000);
  EXPECT_FALSE(capped.converged);
  EXPECT_EQ(capped.terms, 1000);
  EXPECT_GT(capped.tail_bound, 1e-15);
  const auto quick = return_series(w, 1.0, [](long long) { return 0.0; }, 1e-9);
  EXPECT_TRUE(quick.converged);
  EXPECT_EQ(quick.terms, 1);
  EXPECT_DOUBLE_EQ(quick.value, 1.0);
}

TEST(Theorem3, Bounds) {
  const auto exact = theorem3_bounds(3.0, WalkParams(0.5), 0.0);
  EXPECT_EQ(exact.lower, exact.upper);
  EXPECT_EQ(exact.upper, 4.0);
  // Differential-entropy rates may be negative; no clamping.
  const auto neg = theorem3_bounds(-5.0, WalkParams(0.5), binary_entropy(1e-5));
  EXPECT_LT(neg.lower, neg.upper);
  EXPECT_LT(neg.lower, 0.0);
}

TEST(Theorem3, CrossingBetweenSymmetricAndNearPanningWalks) {
  // Upper bounds for p_w = 0.5 and p_w = 0.05 as p_i sweeps (0, 0.5].
  int changes = 0;
  double prev_sign = 0.0;
  double first = 0.0, last = 0.0;
  for (int k = 0; k <= 100; ++k) {
    const double pi = 0.005 * k;
    const double a = theorem3_bounds(bsc_rate(0.5, pi, 8), WalkParams(0.5), 0.0).upper;
    const double b = theorem3_bounds(bsc_rate(0.05, pi, 8), WalkParams(0.05), 0.0).upper;
    const double s = a - b > 0 ? 1.0 : -1.0;
    if (k == 0) first = a - b;
    last = a - b;
    if (prev_sign != 0.0 && s != prev_sign) ++changes;
    prev_sign = s;
  }
  EXPECT_LT(first, 0.0);
  EXPECT_GT(last, 0.0);
  EXPECT_EQ(changes, 1);
}

TEST(DynamicFiniteT, GivenPathEntropyConvergesToRate) {
  const WalkParams w(0.1);
  const BscFieldSpec spec(0.5, 0.1);
  const double rate = bsc_rate(0.1, 0.1, 4, 1e-13);
  EXPECT_NEAR(bsc_given_path_entropy(w, spec, 4, 4000), rate, 1e-9);
  const auto r = dynamic_bounds_bsc_at(w, spec, 4, 4000, 0.0);
  EXPECT_NEAR(r.lower, binary_entropy(0.1) + rate, 1e-9);
  EXPECT_NEAR(r.upper, binary_entropy(0.1) + rate, 1e-3);
  EXPECT_GE(r.upper, r.lower);
}

TEST(DynamicFiniteT, ZeroInnovationMatchesStaticFiniteT) {
  for (double p : {0.1, 0.5})
    for (int t : {1, 2, 5, 40}) {
      const auto d = dynamic_bounds_bsc_at(WalkParams(p), BscFieldSpec(0.5, 0.0), 3, t, 0.1);
      const auto s = static_bounds_at(WalkParams(p), 1.0, 0.1, t);
      EXPECT_NEAR(d.lower, s.lower, 1e-14);
      EXPECT_NEAR(d.upper, s.upper, 1e-14);
    }
}

TEST(DynamicMemory, FirstFrameAndMonotonicity) {
  const BscFieldSpec spec(0.5, 0.1);
  const auto curve = dynamic_memory_curve_bsc(WalkParams(0.5), spec, 8, 2000);
  // M = 1: one fresh bit and L - 1 flipped-overlap bits plus the step.
  EXPECT_NEAR(curve.front(), 1.0 + 1.0 + 7.0 * binary_entropy(0.1), 1e-14);
  for (std::size_t m = 1; m < curve.size(); ++m) EXPECT_LE(curve[m], curve[m - 1] + 1e-13);
  EXPECT_NEAR(dynamic_memory_bound_bsc(WalkParams(0.5), spec, 8, 2000), curve.back(), 1e-15);
}

TEST(DynamicMemory, MemoryHelpsLessWhenSceneChangesFaster) {
  // Difference between the memory-M bound and the unbounded-memory upper
  // bound shrinks as p_i grows, at fixed M.
  for (double p : {0.1, 0.5})
    for (int M : {1, 10, 100}) {
      double prev = 1e9;
      for (double pi : {0.01, 0.05, 0.1, 0.2, 0.3, 0.5}) {
        const double limit = binary_entropy(p) + bsc_rate(p, pi, 8, 1e-12);
        const double diff = dynamic_memory_bound_bsc(WalkParams(p), BscFieldSpec(0.5, pi), 8, M) - limit;
        EXPECT_GE(diff, -1e-9);
        EXPECT_LT(diff, prev + 1e-12) << p << " " << M << " " << pi;
        prev = diff;
      }
    }
}
