#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qqstab/pnorm_space.hpp"
#include "support.hpp"

using namespace qqstab;

TEST(QuasiNormSpec, RejectsBadParameters) {
  EXPECT_THROW(QuasiNormSpec(0, 1.0), InputError);
  EXPECT_THROW(QuasiNormSpec(1, 0.0), InputError);
  EXPECT_THROW(QuasiNormSpec(1, 1.5), InputError);
  EXPECT_THROW(QuasiNormSpec(1, -0.5), InputError);
  EXPECT_NO_THROW(QuasiNormSpec(3, 0.25));
}

TEST(Pnorm, Examples) {
  EXPECT_EQ(to_double(pnorm(QuasiNormSpec(2, 1.0), YVector{3, 4})), 7.0);
  EXPECT_EQ(to_double(pnorm(QuasiNormSpec(2, 0.5), YVector{0, 0})), 0.0);
  EXPECT_EQ(to_double(pnorm(QuasiNormSpec(2, 0.25), YVector::zero(2))), 0.0);
  // (1^0.5 + 1^0.5)^2
  EXPECT_NEAR(to_double(pnorm(QuasiNormSpec(2, 0.5), YVector{1, 1})), 4.0, 1e-15);
  EXPECT_NEAR(to_double(pnorm(QuasiNormSpec(2, 0.5), YVector{-1, 4})), 9.0, 1e-14);
}

TEST(Pnorm, DimensionMismatch) {
  EXPECT_THROW(pnorm(QuasiNormSpec(2, 1.0), YVector{1, 2, 3}), InputError);
}

TEST(Pnorm, LargeAndTinyEntriesDoNotOverflow) {
  const QuasiNormSpec s(2, 0.25);
  const double big = to_double(pnorm(s, YVector{Real(1e300), Real(1e300)}));
  EXPECT_TRUE(testsupport::rel_close(big, 16e300, 1e-12));
  const double tiny = to_double(pnorm(s, YVector{Real(1e-300), Real(1e-300)}));
  EXPECT_TRUE(testsupport::rel_close(tiny, 16e-300, 1e-12));
}

TEST(Modulus, AnalyticValues) {
  EXPECT_EQ(modulus_of_concavity(QuasiNormSpec(2, 1.0)), 1.0);
  EXPECT_DOUBLE_EQ(modulus_of_concavity(QuasiNormSpec(2, 0.5)), 2.0);
  EXPECT_DOUBLE_EQ(modulus_of_concavity(QuasiNormSpec(2, 0.25)), 8.0);
}

TEST(Modulus, EstimateNeverExceedsAnalytic) {
  for (double p : {1.0, 0.75, 0.5, 0.25}) {
    const QuasiNormSpec s(3, p);
    const auto est = estimate_modulus(s, 5000, 11);
    const double M = modulus_of_concavity(s);
    EXPECT_LE(est.max_ratio, M * (1 + 1e-12)) << "p=" << p;
    EXPECT_NEAR(est.diagonal_ratio, M, 1e-12 * M) << "p=" << p;
    EXPECT_EQ(est.samples, 5000u);
  }
}

TEST(Modulus, OneDimensionalSpaceIsNormed) {
  const auto est = estimate_modulus(QuasiNormSpec(1, 0.5), 2000);
  EXPECT_DOUBLE_EQ(est.diagonal_ratio, 1.0);
  EXPECT_LE(est.max_ratio, 1.0 + 1e-12);
}

TEST(PowerSum, Examples) {
  const std::vector<double> two{1, 1};
  EXPECT_TRUE(power_sum_check(two, 0.5));
  const std::vector<double> one{3.7};
  for (double p : {0.1, 0.5, 1.0}) EXPECT_TRUE(power_sum_check(one, p));
  const std::vector<double> neg{1, -1};
  EXPECT_THROW(power_sum_check(neg, 0.5), InputError);
  EXPECT_THROW(power_sum_check(two, 0.0), InputError);
}

TEST(PnormProperty, SubadditivityQuasiTriangleHomogeneity) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> c(-5, 5);
  for (double p : {1.0, 0.75, 0.5, 0.25}) {
    const QuasiNormSpec s(4, p);
    const double M = modulus_of_concavity(s);
    for (int t = 0; t < 2000; ++t) {
      YVector v = YVector::zero(4), w = YVector::zero(4);
      for (std::size_t i = 0; i < 4; ++i) {
        v[i] = c(rng);
        w[i] = c(rng);
      }
      const double nv = to_double(pnorm(s, v)), nw = to_double(pnorm(s, w));
      const double nvw = to_double(pnorm(s, v + w));
      EXPECT_TRUE(within_slack(std::pow(nvw, p), std::pow(nv, p) + std::pow(nw, p)));
      EXPECT_TRUE(within_slack(nvw, M * (nv + nw)));
      const double lam = c(rng);
      EXPECT_TRUE(testsupport::rel_close(to_double(pnorm(s, Real(lam) * v)), std::abs(lam) * nv,
                                         1e-12));
    }
  }
}
