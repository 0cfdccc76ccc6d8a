#pragma once

#include "dsgc/eigen_solve.hpp"
#include "dsgc/features.hpp"
#include "dsgc/kmeans.hpp"
#include "dsgc/signed_graph.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace dsgc::spectral {

enum class SpectralKind { SymAdj, Lsns, Ldns, Lbar, Lsym, BNC, BRC, Sponge, SpongeSym };

inline constexpr std::array<SpectralKind, 9> kAllKinds = {
    SpectralKind::SymAdj, SpectralKind::Lsns, SpectralKind::Ldns,   SpectralKind::Lbar,     SpectralKind::Lsym,
    SpectralKind::BNC,    SpectralKind::BRC,  SpectralKind::Sponge, SpectralKind::SpongeSym};

inline std::string to_string(SpectralKind k) {
  switch (k) {
    case SpectralKind::SymAdj: return "a";
    case SpectralKind::Lsns: return "lsns";
    case SpectralKind::Ldns: return "ldns";
    case SpectralKind::Lbar: return "lbar";
    case SpectralKind::Lsym: return "lsym";
    case SpectralKind::BNC: return "bnc";
    case SpectralKind::BRC: return "brc";
    case SpectralKind::Sponge: return "sponge";
    case SpectralKind::SpongeSym: return "sponge-sym";
  }
  return "a";
}

inline std::optional<SpectralKind> parse_kind(std::string_view s) {
  for (auto k : kAllKinds) {
    if (s == to_string(k)) return k;
  }
  if (s == "sponge_sym") return SpectralKind::SpongeSym;
  return std::nullopt;
}

struct SpectralMethod {
  SpectralKind kind = SpectralKind::SpongeSym;
  std::size_t k = 2;
  double tau_plus = 1.0;
  double tau_minus = 1.0;
  std::size_t kmeans_restarts = 50;

  void validate() const {
    if (k < 1) throw ConfigError("spectral clustering needs k >= 1");
    if ((kind == SpectralKind::Sponge || kind == SpectralKind::SpongeSym) && !(tau_plus > 0.0 && tau_minus > 0.0)) {
      throw ConfigError("SPONGE shifts tau+ and tau- must be > 0");
    }
  }
};

/// Either a matrix diag(left_scale) * core or, for SPONGE kinds, the pencil
/// core v = lambda rhs v. `which` says which end of the spectrum clusters.
struct SpectralOperator {
  SpectralKind kind;
  DenseMatrix core;                       // symmetric
  std::optional<DenseVector> left_scale;  // pseudo-inverse degrees for the D^-1 forms
  std::optional<DenseMatrix> rhs;         // symmetric positive semidefinite
  Extremal which = Extremal::Smallest;

  DenseMatrix matrix() const {
    if (left_scale) return left_scale->asDiagonal() * core;
    return core;
  }
};

struct SpectralEmbedding {
  DenseMatrix vectors;
  DenseVector eigenvalues;
};

namespace detail {

inline DenseVector pseudo_inverse(const DenseVector& d, double power) {
  DenseVector out(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) out[i] = d[i] > 0.0 ? std::pow(d[i], -power) : 0.0;
  return out;
}

inline DenseMatrix symmetric_scale(const DenseMatrix& m, const DenseVector& s) {
  return s.asDiagonal() * m * s.asDiagonal();
}

}  // namespace detail

inline SpectralOperator build_operator(const SignedGraph& g, const SpectralMethod& method) {
  method.validate();
  const DenseMatrix a_pos = g.pos().to_dense();
  const DenseMatrix a_neg = g.neg().to_dense();
  const DenseMatrix a_star = symmetrized_adjacency(g);
  const DenseVector d_pos = a_pos.rowwise().sum();
  const DenseVector d_neg = a_neg.rowwise().sum();
  const DenseVector d_bar = d_pos + d_neg;
  const DenseMatrix l_pos = DenseMatrix(d_pos.asDiagonal()) - a_pos;
  const DenseMatrix l_neg = DenseMatrix(d_neg.asDiagonal()) - a_neg;
  const DenseMatrix violation = l_pos + a_neg;  // L+ + A-

  SpectralOperator op{method.kind, {}, std::nullopt, std::nullopt, Extremal::Smallest};
  switch (method.kind) {
    case SpectralKind::SymAdj:
      op.core = a_star;
      op.which = Extremal::Largest;
      break;
    case SpectralKind::Lsns:
      op.core = DenseMatrix((d_pos - d_neg).asDiagonal()) - a_star;
      op.left_scale = detail::pseudo_inverse(d_bar, 1.0);
      break;
    case SpectralKind::Ldns:
      op.core = DenseMatrix(d_pos.asDiagonal()) - a_star;
      op.left_scale = detail::pseudo_inverse(d_bar, 1.0);
      break;
    case SpectralKind::Lbar:
      op.core = DenseMatrix(d_bar.asDiagonal()) - a_star;
      break;
    case SpectralKind::Lsym:
      op.core = detail::symmetric_scale(DenseMatrix(d_bar.asDiagonal()) - a_star, detail::pseudo_inverse(d_bar, 0.5));
      break;
    case SpectralKind::BRC:
      op.core = violation;
      break;
    case SpectralKind::BNC:
      op.core = detail::symmetric_scale(violation, detail::pseudo_inverse(d_bar, 0.5));
      break;
    case SpectralKind::Sponge:
      op.core = l_pos + method.tau_minus * DenseMatrix(d_neg.asDiagonal());
      op.rhs = l_neg + method.tau_plus * DenseMatrix(d_pos.asDiagonal());
      break;
    case SpectralKind::SpongeSym: {
      const auto n = static_cast<Eigen::Index>(g.num_nodes());
      const DenseMatrix eye = DenseMatrix::Identity(n, n);
      const DenseMatrix lsym_pos = eye - detail::symmetric_scale(a_pos, detail::pseudo_inverse(d_pos, 0.5));
      const DenseMatrix lsym_neg = eye - detail::symmetric_scale(a_neg, detail::pseudo_inverse(d_neg, 0.5));
      op.core = lsym_pos + method.tau_minus * eye;
      op.rhs = lsym_neg + method.tau_plus * eye;
      break;
    }
  }
  return op;
}

/// k extremal eigenvectors of the operator (or pencil), stacked as columns.
///
/// D^-1 M forms are solved through the similar symmetric matrix
/// D^-1/2 M D^-1/2 and mapped back, with unit columns. For the SPONGE pencil,
/// nodes with no edges are left out of the solve and get zero rows.
inline SpectralEmbedding spectral_embedding(const SpectralOperator& op, std::size_t k) {
  const auto n = op.core.rows();
  if (static_cast<Eigen::Index>(k) > n) throw ConfigError("spectral embedding: k exceeds node count");
  SpectralEmbedding emb;
  if (op.rhs) {
    std::vector<Eigen::Index> active;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (op.core(i, i) != 0.0 || (*op.rhs)(i, i) != 0.0 || op.core.row(i).any() || op.rhs->row(i).any()) {
        active.push_back(i);
      }
    }
    const auto m = static_cast<Eigen::Index>(active.size());
    if (static_cast<Eigen::Index>(k) > m) throw ConfigError("spectral embedding: k exceeds non-isolated nodes");
    DenseMatrix a(m, m);
    DenseMatrix b(m, m);
    for (Eigen::Index r = 0; r < m; ++r) {
      for (Eigen::Index c = 0; c < m; ++c) {
        a(r, c) = op.core(active[r], active[c]);
        b(r, c) = (*op.rhs)(active[r], active[c]);
      }
    }
    // Keeps B definite on directions where both forms vanish only through L- null spaces.
    const double ridge = 1e-10 * std::max(1.0, b.diagonal().mean());
    b.diagonal().array() += ridge;
    const auto pairs = generalized_eigenpairs(a, b, k, op.which);
    emb.vectors = DenseMatrix::Zero(n, static_cast<Eigen::Index>(k));
    for (Eigen::Index r = 0; r < m; ++r) emb.vectors.row(active[r]) = pairs.vectors.row(r);
    emb.eigenvalues = pairs.values;
    return emb;
  }
  if (op.left_scale) {
    const DenseVector root = op.left_scale->cwiseSqrt();
    const auto pairs = symmetric_eigenpairs(detail::symmetric_scale(op.core, root), k, op.which);
    emb.vectors = root.asDiagonal() * pairs.vectors;
    for (Eigen::Index c = 0; c < emb.vectors.cols(); ++c) {
      const double norm = emb.vectors.col(c).norm();
      if (norm > 0.0) emb.vectors.col(c) /= norm;
    }
    canonicalize_signs(emb.vectors);
    emb.eigenvalues = pairs.values;
    return emb;
  }
  const auto pairs = symmetric_eigenpairs(op.core, k, op.which);
  emb.vectors = pairs.vectors;
  emb.eigenvalues = pairs.values;
  return emb;
}

/// Spectral embedding followed by k-means++ k-means; deterministic per seed.
inline Labels spectral_cluster(const SignedGraph& g, const SpectralMethod& method, std::uint64_t seed) {
  method.validate();
  if (method.k > g.num_nodes()) throw ConfigError("spectral clustering: k exceeds node count");
  if (method.k == 1) return Labels(g.num_nodes(), 0);
  const auto emb = spectral_embedding(build_operator(g, method), method.k);
  KMeansOptions opt;
  opt.restarts = method.kmeans_restarts;
  return kmeans(emb.vectors, method.k, seed, opt).labels;
}

}  // namespace dsgc::spectral
