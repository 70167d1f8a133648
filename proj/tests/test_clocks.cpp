#include <gtest/gtest.h>

#include <cmath>

#include "lcc/clocks.hpp"

using namespace lcc;

namespace {

// P(e_c - e_p < -d) for independent uniform errors on [-eps, eps], by
// midpoint integration over the e_p where an inversion is possible.
long double uniform_inversion_numeric(long double d, long double eps) {
  long double lo = std::max(-eps, d - eps);
  if (lo >= eps) return 0;
  const int steps = 200000;
  long double h = (eps - lo) / steps, acc = 0;
  for (int i = 0; i < steps; ++i) {
    long double ep = lo + (i + 0.5L) * h;
    long double hi = std::min(eps, ep - d);
    if (hi > -eps) acc += (hi + eps) / (2 * eps);
  }
  return acc * h / (2 * eps);
}

// P(N(0, 2 sigma^2) > d) by Simpson integration of the density.
long double gaussian_tail_numeric(long double d, long double sigma) {
  long double s = sigma * std::sqrt(2.0L);
  long double a = d, b = d + 40 * s;
  const int steps = 200000;
  long double h = (b - a) / steps, acc = 0;
  auto f = [&](long double x) { return std::exp(-x * x / (2 * s * s)); };
  for (int i = 0; i <= steps; ++i) {
    long double w = (i == 0 || i == steps) ? 1 : (i % 2 ? 4 : 2);
    acc += w * f(a + i * h);
  }
  return acc * h / 3 / (s * std::sqrt(2 * 3.14159265358979323846L));
}

}  // namespace

TEST(Clocks, UniformInversionMatchesIntegral) {
  for (double eps : {0.5, 1.0, 3.0})
    for (double rho = 0.0; rho <= 1.2; rho += 0.1) {
      double d = rho * 2 * eps;
      EXPECT_NEAR(inversion_probability_uniform(d, eps),
                  static_cast<double>(uniform_inversion_numeric(d, eps)), 1e-6);
    }
  EXPECT_EQ(inversion_probability_uniform(1.0, 0.0), 0.0);
  EXPECT_THROW(inversion_probability_uniform(-1.0, 1.0), Error);
}

TEST(Clocks, GaussianInversionMatchesIntegral) {
  for (double sigma : {0.3, 1.0, 2.5})
    for (double d : {0.0, 0.5, 1.0, 2.0, 4.0})
      EXPECT_NEAR(inversion_probability_gaussian(d, sigma),
                  static_cast<double>(gaussian_tail_numeric(d, sigma)), 1e-9);
  EXPECT_THROW(inversion_probability_gaussian(1.0, 0.0), Error);
}

TEST(Clocks, RequiredEpsilonSpendsTheBudget) {
  for (double L : {1.0, 5.0, 40.0})
    for (double E : {100.0, 1e4, 1e6})
      for (double delta : {1e-3, 1e-6}) {
        double eps = required_epsilon(L, E, delta);
        long double used = E * uniform_inversion_numeric(L, eps);
        EXPECT_NEAR(static_cast<double>(used / delta), 1.0, 1e-3);
        EXPECT_GT(eps, L / 2);
      }
  EXPECT_THROW(required_epsilon(1.0, 1.0, 0.5), Error);
  EXPECT_THROW(required_epsilon(0.0, 10.0, 0.01), Error);
}

TEST(Clocks, Threshold) {
  EXPECT_TRUE(kappa_clean_threshold(ClockParams{2.0, 4.0}).clean);
  EXPECT_FALSE(kappa_clean_threshold(ClockParams{2.5, 4.0}).clean);
  EXPECT_DOUBLE_EQ(kappa_clean_threshold(ClockParams{2.5, 4.0}).margin, -1.0);
  auto v = kappa_clean_threshold(1.5, single_edge(2.0));
  EXPECT_FALSE(v.clean);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(*v.witness, std::make_pair(MessageIndex{0}, MessageIndex{1}));
}

TEST(Clocks, CommitWaitAndHonesty) {
  EXPECT_DOUBLE_EQ(commit_wait(5.0, 4.0), 6.0);
  EXPECT_DOUBLE_EQ(commit_wait(1.0, 4.0), 0.0);
  long double prod = 1;
  for (int i = 0; i < 1000; ++i) prod *= 1 - 0.001L;
  EXPECT_NEAR(execution_honesty(1000, 0.001), static_cast<double>(prod), 1e-12);
  EXPECT_THROW(execution_honesty(10, 1.5), Error);
}

TEST(MonteCarlo, UniformAgreesWithinStandardErrors) {
  for (double rho : {0.0, 0.3, 0.6, 0.9}) {
    auto r = monte_carlo_inversion(single_edge(rho * 2.0), ErrorModel::uniform(1.0), 100000, 7);
    ASSERT_EQ(r.size(), 1u);
    double p = static_cast<double>(uniform_inversion_numeric(rho * 2.0, 1.0));
    EXPECT_LE(std::abs(r[0].rate - p), 4 * std::max(r[0].standardError, 1e-4));
  }
}

TEST(MonteCarlo, SeededAndBlockwise) {
  auto x = single_edge(0.4);
  auto a = monte_carlo_inversion(x, ErrorModel::gaussian(0.5), 10000, 3);
  auto b = monte_carlo_inversion(x, ErrorModel::gaussian(0.5), 10000, 3);
  auto c = monte_carlo_inversion(x, ErrorModel::gaussian(0.5), 10000, 4);
  EXPECT_EQ(a[0].inversions, b[0].inversions);
  EXPECT_NE(a[0].inversions, c[0].inversions);
  auto shorter = monte_carlo_inversion(x, ErrorModel::gaussian(0.5), kTrialsPerStream, 3);
  auto longer = monte_carlo_inversion(x, ErrorModel::gaussian(0.5), 2 * kTrialsPerStream, 3);
  EXPECT_LE(shorter[0].inversions, longer[0].inversions);
}

TEST(MonteCarlo, BiasAndSameNode) {
  auto x = single_edge(2.0);
  auto biased = monte_carlo_inversion(x, ErrorModel::per_node_bias({{"a", 3.0}}), 50, 1);
  EXPECT_EQ(biased[0].inversions, 50u);
  auto fair = monte_carlo_inversion(x, ErrorModel::per_node_bias({{"a", 1.0}}), 50, 1);
  EXPECT_EQ(fair[0].inversions, 0u);
  x.node = {"a", "a"};
  auto same = monte_carlo_inversion(x, ErrorModel::uniform(10.0), 1000, 1);
  EXPECT_TRUE(same[0].sameNode);
  EXPECT_EQ(same[0].inversions, 0u);
  EXPECT_THROW(monte_carlo_inversion(x, ErrorModel::uniform(1.0), 0, 1), Error);
}
