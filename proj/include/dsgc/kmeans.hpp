#pragma once

#include "dsgc/errors.hpp"
#include "dsgc/random.hpp"
#include "dsgc/signed_graph.hpp"

#include <limits>
#include <vector>

namespace dsgc {

struct KMeansOptions {
  std::size_t restarts = 50;
  std::size_t max_iterations = 300;
  double tolerance = 1e-8;  // stop once no centroid moves farther than this
};

struct KMeansResult {
  Labels labels;
  DenseMatrix centroids;
  double inertia = 0.0;
  std::vector<double> inertia_trace;  // after each assignment step of the winning run
};

namespace detail {

inline Labels nearest_centroids(const DenseMatrix& points, const DenseMatrix& centroids, DenseVector& dist2) {
  const Eigen::Index n = points.rows();
  Labels labels(static_cast<std::size_t>(n));
  dist2.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index arg = 0;
    for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
      const double d = (points.row(i) - centroids.row(c)).squaredNorm();
      if (d < best) {
        best = d;
        arg = c;
      }
    }
    labels[static_cast<std::size_t>(i)] = static_cast<int>(arg);
    dist2[i] = best;
  }
  return labels;
}

}  // namespace detail

/// k-means++ seeding: first centre uniform, then proportional to squared distance.
inline DenseMatrix kmeans_plus_plus(const DenseMatrix& points, std::size_t k, Rng& rng) {
  const Eigen::Index n = points.rows();
  DenseMatrix centroids(static_cast<Eigen::Index>(k), points.cols());
  centroids.row(0) = points.row(static_cast<Eigen::Index>(uniform_index(rng, static_cast<std::uint64_t>(n))));
  DenseVector d2 = (points.rowwise() - centroids.row(0)).rowwise().squaredNorm();
  for (std::size_t c = 1; c < k; ++c) {
    const double total = d2.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      double r = unit_uniform(rng) * total;
      pick = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        r -= d2[i];
        if (r < 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<Eigen::Index>(uniform_index(rng, static_cast<std::uint64_t>(n)));
    }
    centroids.row(static_cast<Eigen::Index>(c)) = points.row(pick);
    d2 = d2.cwiseMin((points.rowwise() - points.row(pick)).rowwise().squaredNorm());
  }
  return centroids;
}

/// Lloyd iterations from the given centres. An emptied cluster is re-seeded at
/// the point farthest from its current centre.
inline KMeansResult lloyd(const DenseMatrix& points, DenseMatrix centroids, const KMeansOptions& opt) {
  const auto k = centroids.rows();
  KMeansResult r;
  DenseVector d2;
  for (std::size_t it = 0; it < opt.max_iterations; ++it) {
    r.labels = detail::nearest_centroids(points, centroids, d2);
    r.inertia_trace.push_back(d2.sum());

    DenseMatrix next = DenseMatrix::Zero(k, points.cols());
    std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      const auto c = r.labels[static_cast<std::size_t>(i)];
      next.row(c) += points.row(i);
      ++sizes[static_cast<std::size_t>(c)];
    }
    for (Eigen::Index c = 0; c < k; ++c) {
      if (sizes[static_cast<std::size_t>(c)] > 0) {
        next.row(c) /= static_cast<double>(sizes[static_cast<std::size_t>(c)]);
      } else {
        Eigen::Index far = 0;
        d2.maxCoeff(&far);
        next.row(c) = points.row(far);
        d2[far] = 0.0;
      }
    }
    const double shift = (next - centroids).rowwise().norm().maxCoeff();
    centroids = std::move(next);
    if (shift < opt.tolerance) break;
  }
  r.labels = detail::nearest_centroids(points, centroids, d2);
  r.inertia = d2.sum();
  r.inertia_trace.push_back(r.inertia);
  r.centroids = std::move(centroids);
  return r;
}

/// Best of `restarts` k-means++ runs by inertia; restart r uses derive_seed(seed, r).
inline KMeansResult kmeans(const DenseMatrix& points, std::size_t k, std::uint64_t seed,
                           const KMeansOptions& opt = {}) {
  if (k < 1 || k > static_cast<std::size_t>(points.rows())) throw ConfigError("k-means requires 1 <= k <= #points");
  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  const std::size_t restarts = std::max<std::size_t>(1, opt.restarts);
  for (std::size_t r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, r));
    auto run = lloyd(points, kmeans_plus_plus(points, k, rng), opt);
    if (run.inertia < best.inertia) best = std::move(run);
  }
  return best;
}

}  // namespace dsgc
