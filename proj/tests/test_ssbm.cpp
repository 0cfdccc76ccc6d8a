#include "dsgc/random.hpp"
#include "dsgc/ssbm.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace dsgc;

TEST(Random, UnitUniformRange) {
  Rng rng(1);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = unit_uniform(rng);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000.0, 0.5, 0.005);
  EXPECT_LT(lo, 0.001);
  EXPECT_GT(hi, 0.999);
}

TEST(Random, UniformIndexIsUnbiased) {
  Rng rng(2);
  std::vector<int> counts(7, 0);
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) ++counts[uniform_index(rng, 7)];
  // Chi-square with 6 degrees of freedom; 22.46 is the 0.999 quantile.
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - 10000.0) * (c - 10000.0) / 10000.0;
  EXPECT_LT(chi2, 22.46);
}

TEST(Random, DerivedSeedsDiffer) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 100; ++s) seen.insert(derive_seed(42, s));
  EXPECT_EQ(seen.size(), 100u);
  EXPECT_EQ(derive_seed(1, 2), derive_seed(1, 2));
}

TEST(Ssbm, BlockLabelsAreContiguousAndBalanced) {
  const auto l = block_labels(10, 3);
  EXPECT_EQ(l, (Labels{0, 0, 0, 0, 1, 1, 1, 2, 2, 2}));
  const auto big = block_labels(1000, 5);
  for (int c = 0; c < 5; ++c) EXPECT_EQ(std::count(big.begin(), big.end(), c), 200);
}

TEST(Ssbm, ValidatesParameters) {
  SsbmParams p;
  p.k = 1;
  EXPECT_THROW(generate_ssbm(p), ConfigError);
  p = {};
  p.eta = 0.5;
  EXPECT_THROW(generate_ssbm(p), ConfigError);
  p = {};
  p.p = 1.5;
  EXPECT_THROW(generate_ssbm(p), ConfigError);
  p = {};
  p.n = 3;
  p.k = 4;
  EXPECT_THROW(generate_ssbm(p), ConfigError);
}

TEST(Ssbm, NoiseFreeGraphIsWeaklyBalanced) {
  SsbmParams p;
  p.n = 300;
  p.k = 4;
  p.p = 0.05;
  p.seed = 3;
  const auto g = generate_ssbm(p);
  EXPECT_EQ(count_violations(g, *g.labels()).violated, 0u);
}

TEST(Ssbm, EdgeCountWithinBinomialBounds) {
  SsbmParams p;
  p.n = 1000;
  p.k = 5;
  p.p = 0.01;
  const double pairs = 1000.0 * 999.0 / 2.0;
  const double mean = pairs * p.p;
  const double sd = std::sqrt(pairs * p.p * (1 - p.p));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    p.seed = seed;
    const auto g = generate_ssbm(p);
    EXPECT_NEAR(static_cast<double>(g.num_edges()), mean, 5 * sd);
  }
}

TEST(Ssbm, FlipRateMatchesEta) {
  SsbmParams p;
  p.n = 1000;
  p.k = 5;
  p.p = 0.02;
  p.eta = 0.1;
  std::size_t flipped = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    p.seed = seed;
    const auto g = generate_ssbm(p);
    const auto c = count_violations(g, *g.labels());
    flipped += c.violated;
    total += c.violated + c.non_violated;
  }
  const double rate = static_cast<double>(flipped) / static_cast<double>(total);
  const double sd = std::sqrt(0.1 * 0.9 / static_cast<double>(total));
  EXPECT_NEAR(rate, 0.1, 5 * sd);
}

TEST(Ssbm, DeterministicAndEdgeSetIndependentOfEta) {
  SsbmParams p;
  p.n = 200;
  p.k = 4;
  p.p = 0.05;
  p.seed = 11;
  EXPECT_EQ(generate_ssbm(p), generate_ssbm(p));
  const auto clean = generate_ssbm(p);
  p.eta = 0.2;
  const auto noisy = generate_ssbm(p);
  EXPECT_EQ(clean.adjacency().cwise_abs(), noisy.adjacency().cwise_abs());
}

TEST(Ssbm, AddNegativeEdgesExactCount) {
  SsbmParams p;
  p.n = 300;
  p.k = 3;
  p.p = 0.03;
  p.seed = 5;
  const auto g = generate_ssbm(p);
  for (double r : {0.0, 0.01, 0.05, 0.1, 0.3}) {
    const auto h = add_random_negative_edges(g, r, 9);
    const auto expect = static_cast<std::size_t>(std::llround(r * static_cast<double>(g.num_edges())));
    EXPECT_EQ(h.num_edges() - g.num_edges(), expect);
    EXPECT_EQ(h.num_positive_edges(), g.num_positive_edges());
    // Existing edges keep their sign.
    for (const auto& e : g.edges()) EXPECT_EQ(h.adjacency().coeff(e.u, e.v), e.sign);
  }
  EXPECT_EQ(add_random_negative_edges(g, 0.0, 1), g);
  EXPECT_THROW(add_random_negative_edges(g, 0.5, 1), ConfigError);
  EXPECT_THROW(add_random_negative_edges(g, -0.1, 1), ConfigError);
}
