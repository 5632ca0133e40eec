#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <limits>
#include <set>
#include <utility>
#include <vector>

#include "distmatch/random.hpp"
#include "distmatch/tolerance.hpp"
#include "distmatch/wspd.hpp"
#include "test_support.hpp"

namespace distmatch {
namespace {

using testing::line;

void expect_valid_wspd(const FiniteMetric& S, double s) {
  const Wspd w = Wspd::build(S, s);
  std::set<std::pair<Index, Index>> covered;
  for (const WspdPair& p : w.pairs()) {
    const std::vector<Index> A = w.points(p.node_a);
    const std::vector<Index> B = w.points(p.node_b);
    ASSERT_TRUE(std::binary_search(A.begin(), A.end(), p.rep_a));
    ASSERT_TRUE(std::binary_search(B.begin(), B.end(), p.rep_b));
    EXPECT_DOUBLE_EQ(p.length, S(p.rep_a, p.rep_b));
    double gap = std::numeric_limits<double>::infinity();
    for (Index a : A) {
      for (Index b : B) {
        gap = std::min(gap, S(a, b));
        covered.insert(std::minmax(a, b));
      }
    }
    EXPECT_TRUE(approx_leq(diam(S, A) * s, gap));
    EXPECT_TRUE(approx_leq(diam(S, B) * s, gap));
  }
  for (Index a = 0; a < S.size(); ++a) {
    for (Index b = a + 1; b < S.size(); ++b) EXPECT_TRUE(covered.count({a, b})) << a << " " << b;
  }
}

TEST(Wspd, TwoPoints) {
  const FiniteMetric S = line({0, 3});
  const Wspd w = Wspd::build(S, 2.0);
  ASSERT_EQ(w.pairs().size(), 1u);
  EXPECT_DOUBLE_EQ(w.pairs()[0].length, 3.0);
  EXPECT_THROW(Wspd::build(line({0}), 2.0), std::invalid_argument);
}

TEST(Wspd, RandomSetsAreSeparatedAndComplete) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 6; ++t) {
    const FiniteMetric S = t % 2 == 0 ? random_euclidean(40, 2, 10.0, rng) : random_tree_metric(30, 1.0, rng);
    expect_valid_wspd(S, 1.0 + t);
  }
}

TEST(CandidateLengths, TwoPointAndUniform) {
  EXPECT_EQ(candidate_lengths(line({0, 2.5}), 0.5), std::vector<double>{2.5});
  std::vector<std::vector<double>> uniform(5, std::vector<double>(5, 1.0));
  for (int i = 0; i < 5; ++i) uniform[i][i] = 0.0;
  EXPECT_EQ(candidate_lengths(FiniteMetric::from_matrix(uniform), 0.5), std::vector<double>{1.0});
}

TEST(CandidateLengths, SandwichEveryDistance) {
  std::mt19937_64 rng(37);
  const double eps = 0.2;
  const FiniteMetric S = random_euclidean(60, 2, 30.0, rng);
  const std::vector<double> lengths = candidate_lengths(S, eps);
  EXPECT_TRUE(std::is_sorted(lengths.begin(), lengths.end()));
  for (Index a = 0; a < S.size(); ++a) {
    for (Index b = a + 1; b < S.size(); ++b) {
      const double d = S(a, b);
      const bool sandwiched = std::any_of(lengths.begin(), lengths.end(), [&](double l) {
        return approx_leq(l / (1 + eps), d) && approx_leq(d, (1 + eps) * l);
      });
      EXPECT_TRUE(sandwiched) << d;
    }
  }
}

}  // namespace
}  // namespace distmatch
