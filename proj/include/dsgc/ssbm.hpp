#pragma once

#include "dsgc/errors.hpp"
#include "dsgc/random.hpp"
#include "dsgc/signed_graph.hpp"

#include <cmath>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace dsgc {

/// Signed stochastic block model SSBM(n, k, p, eta).
struct SsbmParams {
  std::size_t n = 1000;
  std::size_t k = 5;
  double p = 0.01;
  double eta = 0.0;
  std::uint64_t seed = 0;

  void validate() const {
    if (k < 2) throw ConfigError("SSBM requires k >= 2");
    if (k > n) throw ConfigError("SSBM requires k <= n");
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("SSBM edge probability must lie in [0,1]");
    if (!(eta >= 0.0 && eta < 0.5)) throw ConfigError("SSBM flip probability must lie in [0,0.5)");
  }
};

/// Contiguous near-equal blocks: node i belongs to cluster floor(i*k/n).
inline Labels block_labels(std::size_t n, std::size_t k) {
  Labels labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>((i * k) / n);
  return labels;
}

/// Every unordered pair becomes an edge with probability p; intra-cluster edges
/// start positive and inter-cluster negative, then each sign flips with
/// probability eta. Two uniforms are drawn per realised edge, so for a fixed
/// seed and p the edge set does not depend on eta.
inline SignedGraph generate_ssbm(const SsbmParams& params) {
  params.validate();
  Rng rng(params.seed);
  const Labels labels = block_labels(params.n, params.k);
  std::vector<SignedEdge> edges;
  edges.reserve(static_cast<std::size_t>(
      static_cast<double>(params.n) * static_cast<double>(params.n - 1) * 0.5 * params.p * 1.1 + 16));
  for (std::size_t i = 0; i < params.n; ++i) {
    for (std::size_t j = i + 1; j < params.n; ++j) {
      if (unit_uniform(rng) >= params.p) continue;
      int sign = labels[i] == labels[j] ? 1 : -1;
      if (unit_uniform(rng) < params.eta) sign = -sign;
      edges.push_back({i, j, sign});
    }
  }
  return SignedGraph::from_edges(params.n, edges, labels);
}

/// Inserts round(ratio * |E|) negative edges between uniformly drawn
/// non-adjacent pairs.
inline SignedGraph add_random_negative_edges(const SignedGraph& g, double ratio, std::uint64_t seed) {
  if (!(ratio >= 0.0 && ratio < 0.5)) throw ConfigError("perturbation ratio must lie in [0,0.5)");
  const std::size_t n = g.num_nodes();
  auto edges = g.edges();
  const auto target = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(edges.size())));
  const std::size_t pairs = n * (n - 1) / 2;
  if (target + edges.size() > pairs) throw ConfigError("not enough non-adjacent pairs to perturb");

  std::set<std::pair<std::size_t, std::size_t>> taken;
  for (const auto& e : edges) taken.emplace(e.u, e.v);
  Rng rng(seed);
  std::size_t added = 0;
  while (added < target) {
    auto u = static_cast<std::size_t>(uniform_index(rng, n));
    auto v = static_cast<std::size_t>(uniform_index(rng, n));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (!taken.emplace(u, v).second) continue;
    edges.push_back({u, v, -1});
    ++added;
  }
  return SignedGraph::from_edges(n, edges, g.labels());
}

}  // namespace dsgc
