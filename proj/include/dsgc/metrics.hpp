#pragma once

#include "dsgc/errors.hpp"
#include "dsgc/random.hpp"
#include "dsgc/signed_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

namespace dsgc::metrics {

/// counts(p, t) = #nodes with predicted cluster p and true cluster t, over
/// labels compacted to 0..K-1 in ascending order of their original ids.
struct ContingencyTable {
  std::vector<std::vector<std::size_t>> counts;
  std::vector<std::size_t> pred_sizes;
  std::vector<std::size_t> true_sizes;
  std::size_t total = 0;

  std::size_t num_pred() const { return pred_sizes.size(); }
  std::size_t num_true() const { return true_sizes.size(); }
};

namespace detail {

inline std::vector<std::size_t> compact(const Labels& labels, std::size_t& k) {
  std::map<int, std::size_t> ids;
  for (int l : labels) ids.emplace(l, 0);
  std::size_t next = 0;
  for (auto& [label, id] : ids) id = next++;
  k = next;
  std::vector<std::size_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = ids.at(labels[i]);
  return out;
}

/// Minimum-cost perfect assignment on a square matrix (shortest augmenting
/// path with potentials). Returns row -> column.
inline std::vector<std::size_t> hungarian_min(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_to_col(n);
  for (std::size_t j = 1; j <= n; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

inline double comb2(double x) { return x * (x - 1.0) / 2.0; }

}  // namespace detail

inline ContingencyTable contingency(const Labels& pred, const Labels& truth) {
  if (pred.size() != truth.size()) throw ConfigError("label vectors differ in length");
  ContingencyTable t;
  std::size_t kp = 0;
  std::size_t kt = 0;
  const auto p = detail::compact(pred, kp);
  const auto q = detail::compact(truth, kt);
  t.counts.assign(kp, std::vector<std::size_t>(kt, 0));
  t.pred_sizes.assign(kp, 0);
  t.true_sizes.assign(kt, 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    ++t.counts[p[i]][q[i]];
    ++t.pred_sizes[p[i]];
    ++t.true_sizes[q[i]];
  }
  t.total = p.size();
  return t;
}

/// Cluster matching shared by accuracy and F1. Maximizes the matched count;
/// among maximal matchings, maximizes the sum of matched per-pair F1 scores.
/// Returns true cluster -> predicted cluster, or -1 when unmatched.
inline std::vector<long> match_clusters(const ContingencyTable& t) {
  const std::size_t s = std::max(t.num_pred(), t.num_true());
  std::vector<std::vector<double>> cost(s, std::vector<double>(s, 0.0));
  for (std::size_t i = 0; i < t.num_pred(); ++i) {
    for (std::size_t j = 0; j < t.num_true(); ++j) {
      const double c = static_cast<double>(t.counts[i][j]);
      const double f1 = 2.0 * c / static_cast<double>(t.pred_sizes[i] + t.true_sizes[j]);
      // The F1 term sums to < s + 1 < one unit of count, so it only breaks ties.
      cost[i][j] = -(c + f1 / static_cast<double>(s + 1));
    }
  }
  const auto row_to_col = detail::hungarian_min(cost);
  std::vector<long> true_to_pred(t.num_true(), -1);
  for (std::size_t i = 0; i < t.num_pred(); ++i) {
    if (row_to_col[i] < t.num_true()) true_to_pred[row_to_col[i]] = static_cast<long>(i);
  }
  return true_to_pred;
}

/// Best matched fraction over cluster bijections.
inline double accuracy(const Labels& pred, const Labels& truth) {
  const auto t = contingency(pred, truth);
  if (t.total == 0) throw DegenerateError("accuracy of an empty labelling");
  const auto match = match_clusters(t);
  std::size_t hit = 0;
  for (std::size_t j = 0; j < match.size(); ++j) {
    if (match[j] >= 0) hit += t.counts[static_cast<std::size_t>(match[j])][j];
  }
  return static_cast<double>(hit) / static_cast<double>(t.total);
}

/// Macro F1 over true clusters after matching; an unmatched true cluster scores 0.
inline double f1(const Labels& pred, const Labels& truth) {
  const auto t = contingency(pred, truth);
  if (t.total == 0) throw DegenerateError("F1 of an empty labelling");
  const auto match = match_clusters(t);
  double sum = 0.0;
  for (std::size_t j = 0; j < match.size(); ++j) {
    if (match[j] < 0) continue;
    const auto i = static_cast<std::size_t>(match[j]);
    sum += 2.0 * static_cast<double>(t.counts[i][j]) / static_cast<double>(t.pred_sizes[i] + t.true_sizes[j]);
  }
  return sum / static_cast<double>(t.num_true());
}

/// I(pred; true) / sqrt(H(pred) H(true)), natural logs.
inline double nmi(const Labels& pred, const Labels& truth) {
  const auto t = contingency(pred, truth);
  if (t.total == 0) throw DegenerateError("NMI of an empty labelling");
  const double n = static_cast<double>(t.total);
  auto entropy = [n](const std::vector<std::size_t>& sizes) {
    double h = 0.0;
    for (auto s : sizes) {
      if (s == 0) continue;
      const double q = static_cast<double>(s) / n;
      h -= q * std::log(q);
    }
    return h;
  };
  const double hp = entropy(t.pred_sizes);
  const double ht = entropy(t.true_sizes);
  if (hp == 0.0 && ht == 0.0) return 1.0;
  if (hp == 0.0 || ht == 0.0) return 0.0;
  double mi = 0.0;
  for (std::size_t i = 0; i < t.num_pred(); ++i) {
    for (std::size_t j = 0; j < t.num_true(); ++j) {
      const auto c = t.counts[i][j];
      if (c == 0) continue;
      const double cij = static_cast<double>(c);
      mi += cij / n *
            std::log(cij * n / (static_cast<double>(t.pred_sizes[i]) * static_cast<double>(t.true_sizes[j])));
    }
  }
  return std::clamp(mi / std::sqrt(hp * ht), 0.0, 1.0);
}

/// Pair-counting adjusted Rand index; 1 for the degenerate identical cases.
inline double ari(const Labels& pred, const Labels& truth) {
  const auto t = contingency(pred, truth);
  double index = 0.0;
  for (const auto& row : t.counts) {
    for (auto c : row) index += detail::comb2(static_cast<double>(c));
  }
  double a = 0.0;
  double b = 0.0;
  for (auto s : t.pred_sizes) a += detail::comb2(static_cast<double>(s));
  for (auto s : t.true_sizes) b += detail::comb2(static_cast<double>(s));
  const double pairs = detail::comb2(static_cast<double>(t.total));
  if (pairs == 0.0) return 1.0;
  const double expected = a * b / pairs;
  const double max_index = 0.5 * (a + b);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

/// (|E+|/|E-|) * sum_{E-} <z_i,z_j> / sum_{E+} <z_i,z_j>, each edge counted once.
inline double soen(const DenseMatrix& z, const SignedGraph& g) {
  if (static_cast<std::size_t>(z.rows()) != g.num_nodes()) throw ConfigError("embedding rows != node count");
  double pos_sum = 0.0;
  double neg_sum = 0.0;
  std::size_t pos_count = 0;
  std::size_t neg_count = 0;
  for (const auto& e : g.edges()) {
    const double s = z.row(static_cast<Eigen::Index>(e.u)).dot(z.row(static_cast<Eigen::Index>(e.v)));
    if (e.sign > 0) {
      pos_sum += s;
      ++pos_count;
    } else {
      neg_sum += s;
      ++neg_count;
    }
  }
  if (pos_count == 0 || neg_count == 0) throw DegenerateError("SoEN needs both positive and negative edges");
  if (pos_sum == 0.0) throw DegenerateError("SoEN undefined: positive-pair similarity sums to zero");
  return static_cast<double>(pos_count) / static_cast<double>(neg_count) * neg_sum / pos_sum;
}

/// Edges hidden from training for link-sign evaluation.
struct MaskedEdgeSplit {
  std::vector<SignedEdge> masked;
  SignedGraph visible;
  double p_m = 0.0;
};

/// Each edge is masked independently with probability p_m.
inline MaskedEdgeSplit mask_edges(const SignedGraph& g, double p_m, std::uint64_t seed) {
  if (!(p_m > 0.0 && p_m < 1.0)) throw ConfigError("mask probability must lie in (0,1)");
  Rng rng(seed);
  MaskedEdgeSplit split;
  split.p_m = p_m;
  std::vector<SignedEdge> kept;
  for (const auto& e : g.edges()) {
    if (unit_uniform(rng) < p_m) {
      split.masked.push_back(e);
    } else {
      kept.push_back(e);
    }
  }
  split.visible = SignedGraph::from_edges(g.num_nodes(), kept, g.labels(), g.policy());
  return split;
}

/// AUC of the same-cluster indicator against the true sign of the masked
/// edges. For binary scores this is (TPR + TNR) / 2.
inline double masked_auc(const MaskedEdgeSplit& split, const Labels& pred) {
  std::size_t pos = 0;
  std::size_t neg = 0;
  std::size_t true_pos = 0;
  std::size_t true_neg = 0;
  for (const auto& e : split.masked) {
    if (e.u >= pred.size() || e.v >= pred.size()) throw ConfigError("labels must cover every node");
    const bool same = pred[e.u] == pred[e.v];
    if (e.sign > 0) {
      ++pos;
      if (same) ++true_pos;
    } else {
      ++neg;
      if (!same) ++true_neg;
    }
  }
  if (pos == 0 || neg == 0) throw DegenerateError("masked edges contain a single sign class");
  return 0.5 * (static_cast<double>(true_pos) / static_cast<double>(pos) +
                static_cast<double>(true_neg) / static_cast<double>(neg));
}

inline double masked_auc(const SignedGraph& g, const Labels& pred, double p_m, std::uint64_t seed) {
  return masked_auc(mask_edges(g, p_m, seed), pred);
}

}  // namespace dsgc::metrics
