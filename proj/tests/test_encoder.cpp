#include "dsgc/encoder.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace dsgc;
using namespace dsgc::nn;

namespace {

EncoderParams random_params(Eigen::Index d0, unsigned layers, unsigned hidden, std::uint64_t seed) {
  EncoderConfig cfg;
  cfg.layers = layers;
  cfg.hidden = hidden;
  Rng rng(seed);
  auto p = EncoderParams::init(d0, cfg, rng);
  for (Eigen::Index l = 0; l < p.omega_pos.size(); ++l) {
    p.omega_pos[l] = 0.2 + 0.1 * static_cast<double>(l);
    p.omega_neg[l] = 0.5 - 0.15 * static_cast<double>(l);
  }
  return p;
}

DenseMatrix random_features(Eigen::Index n, Eigen::Index d0, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  DenseMatrix x(n, d0);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = nd(rng);
  return x;
}

}  // namespace

TEST(Variant, ParseAndPrint) {
  EXPECT_EQ(parse_variant("dsgc"), EncoderVariant::Dsgc);
  EXPECT_EQ(parse_variant("with_eef"), EncoderVariant::WithEef);
  EXPECT_EQ(parse_variant("no-minus"), EncoderVariant::NoMinus);
  EXPECT_EQ(to_string(EncoderVariant::WithEef), "with-eef");
  EXPECT_THROW(parse_variant("other"), ConfigError);
}

TEST(Propagation, SelfLoopExamples) {
  const auto g = SignedGraph::from_edges(3, {{0, 1, 1}});
  const auto p = build_propagation(g, 1.0, 1.0);
  EXPECT_EQ(p.abar_pos.coeff(2, 2), 1.0);
  EXPECT_EQ(p.abar_pos.coeff(0, 0), 0.5);
  EXPECT_EQ(p.abar_pos.coeff(0, 1), 0.5);
  EXPECT_EQ(p.abar_neg.coeff(0, 0), 1.0);
  const auto bare = build_propagation(g, 0.0, 0.0);
  EXPECT_EQ(bare.abar_pos.row_sums()[2], 0.0);
  EXPECT_EQ(bare.abar_neg.nnz(), 0u);
  EXPECT_THROW(build_propagation(g, -1.0, 1.0), ConfigError);
}

TEST(Propagation, RowSumsAreZeroOrOne) {
  std::mt19937_64 rng(20);
  for (int t = 0; t < 10; ++t) {
    const auto g = oracle::random_graph(20, 0.15, 0.4, rng);
    for (double eps : {0.0, 1.0, 2.5}) {
      const auto p = build_propagation(g, eps, eps);
      for (const auto* m : {&p.abar_pos, &p.abar_neg}) {
        const auto s = m->row_sums();
        for (Eigen::Index i = 0; i < s.size(); ++i) {
          EXPECT_TRUE(s[i] == 0.0 || std::abs(s[i] - 1.0) < 1e-12);
        }
        for (const auto& e : m->entries()) EXPECT_GE(e.value, 0.0);
      }
      EXPECT_EQ(p.abar_pos_t, p.abar_pos.transpose());
    }
  }
}

TEST(InitialEmbeddings, ZeroAndIdentityCases) {
  auto p = random_params(4, 2, 4, 1);
  const auto zero = initial_embeddings(DenseMatrix::Zero(5, 4), p);
  EXPECT_TRUE(zero.z0_pos.isZero());
  EXPECT_TRUE(zero.z0_neg.isZero());
  p.w0_pos = p.w1_pos = p.w0_neg = p.w1_neg = DenseMatrix::Identity(4, 4);
  DenseMatrix x = DenseMatrix::Constant(5, 4, 0.5);
  x(1, 2) = 3.0;
  const auto e = initial_embeddings(x, p);
  EXPECT_EQ(e.z0_pos, x);
  EXPECT_EQ(e.z0_neg, x);
  EXPECT_THROW(initial_embeddings(DenseMatrix::Zero(5, 3), p), ConfigError);
}

TEST(Forward, MatchesDenseExpansion) {
  std::mt19937_64 rng(21);
  for (auto variant : {EncoderVariant::Dsgc, EncoderVariant::WithEef, EncoderVariant::NoMinus}) {
    for (unsigned layers = 0; layers <= 3; ++layers) {
      const auto g = oracle::random_graph(12, 0.3, 0.4, rng);
      const DenseMatrix x = random_features(12, 5, rng);
      const auto params = random_params(5, layers, 6, rng());
      const auto out = forward(x, build_propagation(g, 1.0, 0.5), params, variant);
      const DenseMatrix expect = oracle::encoder_forward(x, oracle::dense_propagation(g, 1.0, 0.5), params, variant);
      EXPECT_LT((out.z - expect).cwiseAbs().maxCoeff(), 1e-10) << to_string(variant) << " L=" << layers;
    }
  }
}

TEST(Forward, ZeroLayersIsMixedInitialEmbedding) {
  std::mt19937_64 rng(22);
  const auto g = oracle::random_graph(8, 0.4, 0.4, rng);
  const DenseMatrix x = random_features(8, 3, rng);
  const auto params = random_params(3, 0, 4, 3);
  const auto init = initial_embeddings(x, params);
  const auto out = forward(x, build_propagation(g, 1.0, 1.0), params, EncoderVariant::Dsgc);
  EXPECT_TRUE(out.z.leftCols(4).isApprox(params.omega_pos[0] * init.z0_pos));
  EXPECT_TRUE(out.z.rightCols(4).isApprox(params.omega_neg[0] * init.z0_neg));
}

TEST(Forward, NoNegativeEdgesSilencesDeeperNegativeTerms) {
  std::mt19937_64 rng(23);
  const auto g = oracle::random_graph(10, 0.4, 0.0, rng);
  const DenseMatrix x = random_features(10, 3, rng);
  const auto params = random_params(3, 3, 4, 4);
  const auto out = forward(x, build_propagation(g, 1.0, 0.0), params, EncoderVariant::Dsgc);
  for (unsigned l = 1; l <= 3; ++l) EXPECT_TRUE(out.cache.neg_layers[l].isZero());
}

TEST(Forward, FirstNegativeTermIsNegatedEnemyMean) {
  std::mt19937_64 rng(24);
  const auto g = oracle::random_graph(10, 0.4, 0.5, rng);
  const DenseMatrix x = random_features(10, 3, rng);
  const auto params = random_params(3, 2, 4, 5);
  const auto prop = build_propagation(g, 1.0, 1.0);
  const auto out = forward(x, prop, params, EncoderVariant::Dsgc);
  const DenseMatrix z0 = out.cache.init.z0_neg;
  const DenseMatrix a = g.neg().to_dense() + DenseMatrix::Identity(10, 10);
  for (Eigen::Index i = 0; i < 10; ++i) {
    Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(4);
    for (Eigen::Index j = 0; j < 10; ++j) mean += a(i, j) * z0.row(j);
    mean /= a.row(i).sum();
    EXPECT_TRUE(out.cache.neg_layers[1].row(i).isApprox(-mean, 1e-12));
  }
}

TEST(Forward, NoMinusFlipsDeeperNegativeTerms) {
  std::mt19937_64 rng(25);
  const auto g = oracle::random_graph(10, 0.4, 0.5, rng);
  const DenseMatrix x = random_features(10, 3, rng);
  auto params = random_params(3, 1, 4, 6);
  const auto prop = build_propagation(g, 1.0, 1.0);
  params.omega_neg[0] = 0.0;
  const auto a = forward(x, prop, params, EncoderVariant::Dsgc);
  const auto b = forward(x, prop, params, EncoderVariant::NoMinus);
  EXPECT_TRUE(b.z.rightCols(4).isApprox(-a.z.rightCols(4), 1e-14));
  EXPECT_EQ(b.z.leftCols(4), a.z.leftCols(4));
  // For deeper stacks the sign flips per term: Z-(l) is odd in the negative channel.
  params = random_params(3, 3, 4, 7);
  const auto c = forward(x, prop, params, EncoderVariant::Dsgc);
  const auto d = forward(x, prop, params, EncoderVariant::NoMinus);
  for (unsigned l = 1; l <= 3; ++l) EXPECT_TRUE(d.cache.neg_layers[l].isApprox(-c.cache.neg_layers[l], 1e-12));
}

TEST(Forward, PermutationEquivariance) {
  std::mt19937_64 rng(26);
  const auto g = oracle::random_graph(11, 0.35, 0.4, rng);
  const DenseMatrix x = random_features(11, 4, rng);
  const auto params = random_params(4, 2, 5, 8);
  std::vector<std::size_t> perm(11);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<SignedEdge> edges;
  for (const auto& e : g.edges()) edges.push_back({perm[e.u], perm[e.v], e.sign});
  const auto gp = SignedGraph::from_edges(11, edges);
  DenseMatrix xp(11, 4);
  for (std::size_t i = 0; i < 11; ++i) xp.row(static_cast<Eigen::Index>(perm[i])) = x.row(static_cast<Eigen::Index>(i));
  for (auto variant : {EncoderVariant::Dsgc, EncoderVariant::WithEef, EncoderVariant::NoMinus}) {
    const auto z = forward(x, build_propagation(g, 1.0, 1.0), params, variant).z;
    const auto zp = forward(xp, build_propagation(gp, 1.0, 1.0), params, variant).z;
    for (std::size_t i = 0; i < 11; ++i) {
      EXPECT_TRUE(zp.row(static_cast<Eigen::Index>(perm[i])).isApprox(z.row(static_cast<Eigen::Index>(i)), 1e-12));
    }
  }
}

TEST(Forward, NegativeBranchIsLinearInItsInitialEmbedding) {
  std::mt19937_64 rng(27);
  const auto g = oracle::random_graph(9, 0.4, 0.4, rng);
  const DenseMatrix x = random_features(9, 3, rng);
  auto params = random_params(3, 2, 4, 9);
  const auto prop = build_propagation(g, 1.0, 1.0);
  const auto a = forward(x, prop, params, EncoderVariant::Dsgc);
  params.w1_neg *= 2.0;
  const auto b = forward(x, prop, params, EncoderVariant::Dsgc);
  EXPECT_TRUE(b.z.rightCols(4).isApprox(2.0 * a.z.rightCols(4), 1e-13));
}

TEST(Forward, ShapeErrors) {
  const auto g = SignedGraph::from_edges(4, {{0, 1, 1}});
  const auto params = random_params(3, 1, 2, 1);
  EXPECT_THROW(forward(DenseMatrix::Zero(5, 3), build_propagation(g, 1, 1), params, EncoderVariant::Dsgc), ConfigError);
  EXPECT_THROW(forward(DenseMatrix::Zero(4, 2), build_propagation(g, 1, 1), params, EncoderVariant::Dsgc), ConfigError);
  auto bad = params;
  bad.omega_neg.resize(1);
  EXPECT_THROW(forward(DenseMatrix::Zero(4, 3), build_propagation(g, 1, 1), bad, EncoderVariant::Dsgc), ConfigError);
}

TEST(Init, ShapesAndBounds) {
  EncoderConfig cfg;
  Rng rng(3);
  const auto p = EncoderParams::init(5, cfg, rng);
  EXPECT_EQ(p.w0_pos.rows(), 5);
  EXPECT_EQ(p.w0_pos.cols(), 32);
  EXPECT_EQ(p.w1_neg.rows(), 32);
  EXPECT_EQ(p.layers(), 2u);
  EXPECT_LE(p.w0_pos.cwiseAbs().maxCoeff(), 1.0 / std::sqrt(5.0));
  EXPECT_LE(p.w1_pos.cwiseAbs().maxCoeff(), 1.0 / std::sqrt(32.0));
  EXPECT_TRUE(p.omega_pos.isApprox(DenseVector::Constant(3, 1.0 / 3.0)));
}
