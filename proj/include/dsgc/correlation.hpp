#pragma once

#include "dsgc/errors.hpp"
#include "dsgc/signed_graph.hpp"

#include <cmath>
#include <vector>

namespace dsgc {

/// Pearson correlation matrix of the rows of `series` (node x time).
inline DenseMatrix pearson_matrix(const DenseMatrix& series) {
  if (series.cols() < 2) throw ConfigError("correlation ingestion needs at least two time points per node");
  DenseMatrix centered = series.colwise() - series.rowwise().mean();
  DenseVector norms = centered.rowwise().norm();
  for (Eigen::Index i = 0; i < norms.size(); ++i) {
    if (!(norms[i] > 0.0)) {
      throw ConfigError("node " + std::to_string(i) + " has zero variance; correlation undefined");
    }
    centered.row(i) /= norms[i];
  }
  DenseMatrix corr = centered * centered.transpose();
  return corr.cwiseMax(-1.0).cwiseMin(1.0);
}

/// Edge (i,j) iff |corr(i,j)| > threshold, signed by the correlation.
/// Threshold 0 gives a complete signed graph (exact zero correlations excepted).
inline SignedGraph ingest_correlation(const DenseMatrix& series, double threshold) {
  if (!(threshold >= 0.0)) throw ConfigError("correlation threshold must be >= 0");
  const DenseMatrix corr = pearson_matrix(series);
  const auto n = static_cast<std::size_t>(series.rows());
  std::vector<SignedEdge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double c = corr(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (std::abs(c) > threshold) edges.push_back({i, j, c > 0.0 ? 1 : -1});
    }
  }
  return SignedGraph::from_edges(n, edges);
}

}  // namespace dsgc
