#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "distmatch/distopt.hpp"
#include "distmatch/gadgets.hpp"
#include "distmatch/oracle.hpp"
#include "distmatch/random.hpp"
#include "distmatch/tolerance.hpp"
#include "test_support.hpp"

namespace distmatch {
namespace {

using testing::line;

TEST(DecideExpansions, IdentityAndForcedRatio) {
  const FiniteMetric X = line({0, 1, 3});
  EXPECT_TRUE(decide_expansions(X, X, 1.0, 1.0, 0.1).positive);
  const Decision d = decide_expansions(line({0, 1}), line({0, 4}), 2.0, 1.0, 0.1);
  EXPECT_FALSE(d.positive);
  EXPECT_FALSE(d.witness.has_value());
  EXPECT_FALSE(decide_expansions(X, X, 0.5, 1.0, 0.1).positive);
}

TEST(DecideExpansions, WitnessRespectsRelaxedBounds) {
  std::mt19937_64 rng(73);
  const FiniteMetric Y = random_euclidean(8, 2, 10.0, rng);
  const FiniteMetric X = rescale(submetric(Y, random_subset(3, 8, rng)), 0.5);
  const Decision d = decide_expansions(X, Y, 2.0, 0.5, 0.25);
  ASSERT_TRUE(d.positive);
  ASSERT_TRUE(d.witness.has_value());
  EXPECT_TRUE(approx_leq(expansion(*d.witness, X, Y), 1.25 * 2.0));
  EXPECT_TRUE(approx_leq(inverse_expansion(*d.witness, X, Y), 1.25 * 0.5));
}

TEST(DecideDistortion, Basics) {
  const FiniteMetric X = line({0, 2, 3});
  EXPECT_TRUE(decide_distortion(X, X, 1.0, 0.5).positive);
  EXPECT_THROW(decide_distortion(X, X, 0.5, 0.5), std::invalid_argument);
}

TEST(DecideDistortion, GadgetWithClique) {
  const Graph G = Graph(24, {}).with_clique({2, 5});
  const CliqueInstance inst = gen_min_distortion_instance(G, 2, 2.0);
  EXPECT_TRUE(decide_distortion(inst.X, inst.Y, 2.0, 0.25).positive);
}

TEST(MinDistortion, TrivialValues) {
  const FiniteMetric X = line({0, 1, 3});
  const DistortionEstimate same = min_distortion(X, X, 0.5);
  EXPECT_DOUBLE_EQ(same.delta, 1.0);
  EXPECT_DOUBLE_EQ(min_distortion(line({0, 1}), line({0, 2}), 0.5).delta, 1.0);
  EXPECT_DOUBLE_EQ(min_distortion_naive(line({0, 1}), line({0, 2}), 0.5).delta, 1.0);
}

TEST(MinDistortion, BandAgainstOracle) {
  for (const auto& inst : testing::distortion_corpus(40, 79)) {
    const double truth = brute_min_distortion(inst.X, inst.Y).first;
    const DistortionEstimate fast = min_distortion(inst.X, inst.Y, inst.eps);
    const DistortionEstimate naive = min_distortion_naive(inst.X, inst.Y, inst.eps);
    for (const DistortionEstimate* est : {&fast, &naive}) {
      EXPECT_TRUE(approx_geq(est->delta, truth)) << inst.label;
      EXPECT_TRUE(approx_leq(est->delta, (1 + inst.eps) * truth)) << inst.label;
      EXPECT_NEAR(distortion(est->matching, inst.X, inst.Y), est->delta, 1e-9 * est->delta);
    }
    EXPECT_TRUE(approx_leq(fast.delta, (1 + inst.eps) * (1 + inst.eps) * naive.delta));
    EXPECT_FALSE(fast.probes.empty());
  }
}

TEST(MinDistortion, GadgetBand) {
  const Graph G = Graph(24, {{0, 1}, {1, 2}, {0, 2}});
  const CliqueInstance inst = gen_min_distortion_instance(G, 3, 2.0);
  const DistortionEstimate est = min_distortion(inst.X, inst.Y, 0.25);
  EXPECT_TRUE(approx_geq(est.delta, 2.0));
  EXPECT_TRUE(approx_leq(est.delta, 2.5));
}

}  // namespace
}  // namespace distmatch
