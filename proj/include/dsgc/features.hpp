#pragma once

#include "dsgc/eigen_solve.hpp"
#include "dsgc/signed_graph.hpp"

namespace dsgc {

/// Symmetrized signed adjacency A* = (A + A^T) / 2.
inline DenseMatrix symmetrized_adjacency(const SignedGraph& g) {
  const DenseMatrix a = g.adjacency().to_dense();
  return 0.5 * (a + a.transpose());
}

/// Node features: eigenvectors of A* for its k algebraically largest
/// eigenvalues, unit columns, largest-magnitude entry positive.
inline DenseMatrix spectral_features(const SignedGraph& g, std::size_t k) {
  if (k > g.num_nodes()) throw ConfigError("spectral_features: k exceeds node count");
  return symmetric_eigenpairs(symmetrized_adjacency(g), k, Extremal::Largest).vectors;
}

}  // namespace dsgc
