#pragma once

#include "dsgc/errors.hpp"
#include "dsgc/sparse_matrix.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace dsgc {

using Labels = std::vector<int>;

struct SignedEdge {
  std::size_t u;
  std::size_t v;
  int sign;  // +1 or -1

  friend bool operator==(const SignedEdge&, const SignedEdge&) = default;
};

enum class ChannelPolicy {
  Disjoint,      // a pair is positive or negative, never both
  AllowOverlap,  // augmented graphs: channels binarized independently
};

/// Undirected signed graph stored as two binary channels, A = pos - neg.
///
/// Both channels are symmetric with zero diagonal and entries in {0,1}. Unless
/// built with ChannelPolicy::AllowOverlap, pos and neg have disjoint support.
class SignedGraph {
 public:
  SignedGraph() = default;

  /// Builds from an undirected edge list. Repeated pairs must agree in sign.
  static SignedGraph from_edges(std::size_t n, const std::vector<SignedEdge>& edges,
                                std::optional<Labels> labels = std::nullopt,
                                ChannelPolicy policy = ChannelPolicy::Disjoint) {
    std::vector<Entry> pos;
    std::vector<Entry> neg;
    pos.reserve(2 * edges.size());
    neg.reserve(2 * edges.size());
    for (const auto& e : edges) {
      if (e.u >= n || e.v >= n) throw ConfigError("edge endpoint out of range");
      if (e.u == e.v) throw ConfigError("self-loops are not allowed in a signed graph");
      if (e.sign != 1 && e.sign != -1) throw ConfigError("edge sign must be +1 or -1");
      auto& ch = e.sign > 0 ? pos : neg;
      ch.push_back({e.u, e.v, 1.0});
      ch.push_back({e.v, e.u, 1.0});
    }
    // Duplicates sum; clamp back to binary.
    auto p = SparseMatrix::from_entries(n, n, pos).positive_indicator();
    auto q = SparseMatrix::from_entries(n, n, neg).positive_indicator();
    return from_channels(std::move(p), std::move(q), policy, std::move(labels));
  }

  static SignedGraph from_channels(SparseMatrix pos, SparseMatrix neg, ChannelPolicy policy,
                                   std::optional<Labels> labels = std::nullopt) {
    SignedGraph g;
    g.n_ = pos.rows();
    g.pos_ = std::move(pos);
    g.neg_ = std::move(neg);
    g.policy_ = policy;
    g.validate();
    if (labels) g.set_labels(std::move(*labels));
    return g;
  }

  /// Signs from a signed adjacency matrix: positive entries -> pos, negative -> neg.
  static SignedGraph from_adjacency(const SparseMatrix& a,
                                    std::optional<Labels> labels = std::nullopt) {
    const auto pos = a.positive_indicator().without_diagonal();
    const auto neg = (-a).positive_indicator().without_diagonal();
    return from_channels(pos, neg, ChannelPolicy::Disjoint, std::move(labels));
  }

  std::size_t num_nodes() const noexcept { return n_; }
  const SparseMatrix& pos() const noexcept { return pos_; }
  const SparseMatrix& neg() const noexcept { return neg_; }
  ChannelPolicy policy() const noexcept { return policy_; }

  /// Signed adjacency A = pos - neg (overlapping pairs cancel to 0).
  SparseMatrix adjacency() const { return pos_ - neg_; }

  std::size_t num_positive_edges() const noexcept { return pos_.nnz() / 2; }
  std::size_t num_negative_edges() const noexcept { return neg_.nnz() / 2; }
  std::size_t num_edges() const noexcept { return num_positive_edges() + num_negative_edges(); }

  /// Unordered edges (u < v), positive channel first then negative, row-major within each.
  std::vector<SignedEdge> edges() const {
    std::vector<SignedEdge> out;
    out.reserve(num_edges());
    for (const auto& e : pos_.entries()) {
      if (e.row < e.col) out.push_back({e.row, e.col, 1});
    }
    for (const auto& e : neg_.entries()) {
      if (e.row < e.col) out.push_back({e.row, e.col, -1});
    }
    return out;
  }

  bool channels_disjoint() const { return pos_.cwise_product(neg_).nnz() == 0; }

  const std::optional<Labels>& labels() const noexcept { return labels_; }

  void set_labels(Labels labels) {
    if (labels.size() != n_) throw ConfigError("label vector length does not match node count");
    for (int l : labels) {
      if (l < 0) throw ConfigError("cluster labels must be non-negative");
    }
    labels_ = std::move(labels);
  }

  SignedGraph with_labels(std::optional<Labels> labels) const {
    SignedGraph g = *this;
    g.labels_.reset();
    if (labels) g.set_labels(std::move(*labels));
    return g;
  }

  friend bool operator==(const SignedGraph& a, const SignedGraph& b) {
    return a.n_ == b.n_ && a.pos_ == b.pos_ && a.neg_ == b.neg_ && a.labels_ == b.labels_;
  }

 private:
  static void validate_channel(const SparseMatrix& m, std::size_t n, const char* name) {
    if (m.rows() != n || m.cols() != n) {
      throw ConfigError(std::string(name) + " channel must be square n x n");
    }
    for (const auto& e : m.entries()) {
      if (e.row == e.col) throw ConfigError(std::string(name) + " channel has a diagonal entry");
      if (e.value != 1.0) throw ConfigError(std::string(name) + " channel must be binary");
    }
    if (!m.is_symmetric()) throw ConfigError(std::string(name) + " channel is not symmetric");
  }

  void validate() const {
    validate_channel(pos_, n_, "positive");
    validate_channel(neg_, n_, "negative");
    if (policy_ == ChannelPolicy::Disjoint && !channels_disjoint()) {
      throw ConfigError("a node pair is both positive and negative");
    }
  }

  std::size_t n_ = 0;
  SparseMatrix pos_;
  SparseMatrix neg_;
  ChannelPolicy policy_ = ChannelPolicy::Disjoint;
  std::optional<Labels> labels_;
};

struct DegreeMatrices {
  SparseMatrix d_pos;
  SparseMatrix d_neg;
  SparseMatrix d_bar;
};

/// D+ = rowsum(A+), D- = rowsum(A-), Dbar = D+ + D-.
inline DegreeMatrices degree_matrices(const SignedGraph& g) {
  const DenseVector dp = g.pos().row_sums();
  const DenseVector dn = g.neg().row_sums();
  return {SparseMatrix::diagonal(dp), SparseMatrix::diagonal(dn), SparseMatrix::diagonal(dp + dn)};
}

struct ViolationCounts {
  std::size_t violated = 0;      // negative intra-cluster + positive inter-cluster
  std::size_t non_violated = 0;  // positive intra-cluster + negative inter-cluster
};

inline ViolationCounts count_violations(const SignedGraph& g, const Labels& labels) {
  if (labels.size() != g.num_nodes()) throw ConfigError("labels must cover every node");
  ViolationCounts c;
  for (const auto& e : g.edges()) {
    const bool same = labels[e.u] == labels[e.v];
    if ((e.sign > 0) == same) {
      ++c.non_violated;
    } else {
      ++c.violated;
    }
  }
  return c;
}

/// Violated edges over non-violated edges (a fraction, not a percentage).
inline double violation_ratio(const SignedGraph& g, const Labels& labels) {
  const auto c = count_violations(g, labels);
  if (c.non_violated == 0) throw DegenerateError("violation ratio undefined: no non-violated edges");
  return static_cast<double>(c.violated) / static_cast<double>(c.non_violated);
}

}  // namespace dsgc
