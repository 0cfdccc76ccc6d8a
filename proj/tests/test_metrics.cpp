#include "dsgc/metrics.hpp"
#include "dsgc/ssbm.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace dsgc;
using namespace dsgc::metrics;

namespace {

Labels relabel(const Labels& l, const std::vector<int>& map) {
  Labels out(l.size());
  for (std::size_t i = 0; i < l.size(); ++i) out[i] = map[static_cast<std::size_t>(l[i])];
  return out;
}

}  // namespace

TEST(Accuracy, HandExamples) {
  EXPECT_EQ(accuracy({0, 0, 1, 1}, {1, 1, 0, 0}), 1.0);
  EXPECT_EQ(accuracy({0, 1, 0, 1}, {0, 0, 1, 1}), 0.5);
  EXPECT_EQ(accuracy({2, 0, 1}, {2, 0, 1}), 1.0);
  EXPECT_THROW(accuracy({0}, {0, 1}), ConfigError);
}

TEST(F1, HandExamples) {
  EXPECT_NEAR(f1({0, 0, 0, 1}, {0, 0, 1, 1}), (0.8 + 2.0 / 3.0) / 2.0, 1e-12);
  EXPECT_EQ(f1({1, 0, 2}, {1, 0, 2}), 1.0);
  // Three true classes, two predicted: the unmatched class scores 0.
  EXPECT_NEAR(f1({0, 0, 1, 1, 1, 1}, {0, 0, 1, 1, 2, 2}), (1.0 + 2.0 / 3.0 + 0.0) / 3.0, 1e-12);
}

TEST(Nmi, Conventions) {
  EXPECT_NEAR(nmi({0, 0, 1, 1}, {1, 1, 0, 0}), 1.0, 1e-12);
  EXPECT_EQ(nmi({0, 0, 0, 0}, {0, 1, 0, 1}), 0.0);
  EXPECT_EQ(nmi({0, 0, 0}, {1, 1, 1}), 1.0);
}

TEST(Nmi, IndependentPartitionsNearZero) {
  std::mt19937_64 rng(50);
  const auto a = oracle::random_labels(10000, 5, rng);
  const auto b = oracle::random_labels(10000, 5, rng);
  EXPECT_LT(nmi(a, b), 0.05);
}

TEST(Ari, Conventions) {
  EXPECT_NEAR(ari({0, 0, 1, 1}, {1, 1, 0, 0}), 1.0, 1e-12);
  EXPECT_EQ(ari({0, 0, 0}, {1, 1, 1}), 1.0);
  EXPECT_NEAR(ari({0, 1, 0, 1}, {0, 0, 1, 1}), oracle::ari({0, 1, 0, 1}, {0, 0, 1, 1}), 1e-12);
}

TEST(Ari, IndependentPartitionsAverageZero) {
  std::mt19937_64 rng(51);
  double sum = 0.0;
  for (int t = 0; t < 1000; ++t) {
    sum += ari(oracle::random_labels(500, 4, rng), oracle::random_labels(500, 4, rng));
  }
  EXPECT_LT(std::abs(sum / 1000.0), 0.02);
}

TEST(Metrics, MatchEnumerationOracles) {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 8);
    const int kp = 1 + t % 3;
    const int kt = 1 + (t / 3) % 3;
    const auto pred = oracle::random_labels(n, kp, rng);
    const auto truth = oracle::random_labels(n, kt, rng);
    EXPECT_NEAR(accuracy(pred, truth), oracle::accuracy(pred, truth), 1e-12);
    EXPECT_NEAR(ari(pred, truth), oracle::ari(pred, truth), 1e-12);
    EXPECT_NEAR(nmi(pred, truth), oracle::nmi(pred, truth), 1e-12);
    EXPECT_NEAR(f1(pred, truth), oracle::f1(pred, truth), 1e-12);
  }
}

TEST(Metrics, InvariantUnderRelabeling) {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 50; ++t) {
    const auto pred = oracle::random_labels(40, 4, rng);
    const auto truth = oracle::random_labels(40, 4, rng);
    std::vector<int> m1 = {0, 1, 2, 3}, m2 = {0, 1, 2, 3};
    std::shuffle(m1.begin(), m1.end(), rng);
    std::shuffle(m2.begin(), m2.end(), rng);
    const auto p2 = relabel(pred, m1);
    const auto t2 = relabel(truth, m2);
    EXPECT_NEAR(accuracy(pred, truth), accuracy(p2, t2), 1e-12);
    EXPECT_NEAR(nmi(pred, truth), nmi(p2, t2), 1e-12);
    EXPECT_NEAR(ari(pred, truth), ari(p2, t2), 1e-12);
    EXPECT_NEAR(f1(pred, truth), f1(p2, t2), 1e-12);
  }
}

TEST(Metrics, RangesAndMajorityBaseline) {
  std::mt19937_64 rng(54);
  for (int t = 0; t < 50; ++t) {
    const auto pred = oracle::random_labels(30, 3, rng);
    const auto truth = oracle::random_labels(30, 3, rng);
    for (double v : {accuracy(pred, truth), nmi(pred, truth), f1(pred, truth)}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    EXPECT_LE(ari(pred, truth), 1.0);
    EXPECT_GE(accuracy(Labels(30, 0), truth), 1.0 / 3.0);
  }
}

TEST(Soen, HandExamples) {
  const auto g = SignedGraph::from_edges(4, {{0, 1, -1}, {2, 3, 1}});
  DenseMatrix z(4, 2);
  z << 1, 0, -1, 0, 1, 0, 1, 0;
  EXPECT_EQ(soen(z, g), -1.0);
  const auto h = SignedGraph::from_edges(4, {{0, 1, -1}, {2, 3, 1}, {0, 2, 1}});
  EXPECT_NEAR(soen(DenseMatrix::Constant(4, 3, 0.7), h), 1.0, 1e-12);
  EXPECT_THROW(soen(z, SignedGraph::from_edges(4, {{0, 1, 1}})), DegenerateError);
}

TEST(Soen, DirectSumAndOrthogonalInvariance) {
  std::mt19937_64 rng(55);
  std::normal_distribution<double> nd;
  const auto g = oracle::random_graph(20, 0.3, 0.4, rng);
  DenseMatrix z(20, 4);
  for (Eigen::Index i = 0; i < z.size(); ++i) z.data()[i] = nd(rng);
  const DenseMatrix gram = z * z.transpose();
  const auto s = oracle::sign_table(g);
  double ps = 0, ns = 0, pc = 0, nc = 0;
  for (int i = 0; i < 20; ++i) {
    for (int j = i + 1; j < 20; ++j) {
      if (s[i][j] > 0) {
        ps += gram(i, j);
        ++pc;
      } else if (s[i][j] < 0) {
        ns += gram(i, j);
        ++nc;
      }
    }
  }
  EXPECT_NEAR(soen(z, g), pc / nc * ns / ps, 1e-10);
  DenseMatrix q(4, 4);
  for (Eigen::Index i = 0; i < q.size(); ++i) q.data()[i] = nd(rng);
  const DenseMatrix orth = Eigen::HouseholderQR<DenseMatrix>(q).householderQ();
  EXPECT_NEAR(soen(z * orth, g), soen(z, g), 1e-10);
}

TEST(MaskedAuc, PerfectAndCollapsed) {
  SsbmParams p;
  p.n = 200;
  p.k = 4;
  p.p = 0.1;
  const auto g = generate_ssbm(p);
  EXPECT_EQ(masked_auc(g, *g.labels(), 0.2, 1), 1.0);
  EXPECT_EQ(masked_auc(g, Labels(200, 0), 0.2, 1), 0.5);
}

TEST(MaskedAuc, SplitPartitionsEdges) {
  std::mt19937_64 rng(56);
  const auto g = oracle::random_graph(30, 0.3, 0.4, rng);
  const auto split = mask_edges(g, 0.3, 7);
  EXPECT_EQ(split.masked.size() + split.visible.num_edges(), g.num_edges());
  for (const auto& e : split.masked) EXPECT_EQ(split.visible.adjacency().coeff(e.u, e.v), 0.0);
  EXPECT_THROW(mask_edges(g, 1.0, 0), ConfigError);
}

TEST(MaskedAuc, MatchesRankOracle) {
  std::mt19937_64 rng(57);
  for (int t = 0; t < 20; ++t) {
    const auto g = oracle::random_graph(100, 0.1, 0.4, rng);
    const auto pred = oracle::random_labels(100, 3, rng);
    const auto split = mask_edges(g, 0.3, static_cast<std::uint64_t>(t));
    EXPECT_NEAR(masked_auc(split, pred), oracle::rank_auc(split.masked, pred), 1e-10);
  }
}
