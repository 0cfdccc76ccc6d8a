#pragma once

#include "dsgc/errors.hpp"
#include "dsgc/signed_graph.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace dsgc::rewire {

/// Violation Sign-Refine settings.
struct VsrParams {
  unsigned l_max = 3;
  double delta_plus = 1.0;
  double delta_minus = -1.0;
  bool edges_only = false;  // refine existing edges only

  void validate() const {
    if (l_max < 1) throw ConfigError("VS-R walk length bound must be >= 1");
    if (!(delta_plus > 0.0)) throw ConfigError("VS-R delta_plus must be > 0");
    if (!(delta_minus < 0.0)) throw ConfigError("VS-R delta_minus must be < 0");
  }
};

/// Density-based augmentation settings; m_plus = 1, m_minus = 0 is a no-op.
struct DaParams {
  unsigned m_plus = 3;
  unsigned m_minus = 2;

  void validate() const {
    if (m_plus < 1) throw ConfigError("DA m_plus must be >= 1");
  }
};

namespace detail {

/// Sum_{a=0}^{m} P^a N P^{m-a}, built by the recurrence S_0 = N,
/// S_j = P S_{j-1} + N P^j.
inline SparseMatrix sandwich_sum(const SparseMatrix& p, const SparseMatrix& n, unsigned m) {
  SparseMatrix s = n;
  SparseMatrix p_pow = SparseMatrix::identity(p.rows());
  for (unsigned j = 1; j <= m; ++j) {
    p_pow = p_pow * p;
    s = p * s + n * p_pow;
  }
  return s;
}

}  // namespace detail

/// mu+_l - mu-_l for every pair: (A+)^l - sum_{a=0}^{l-1} (A+)^a A- (A+)^{l-1-a}.
/// Positive walks use only positive edges; negative walks exactly one negative edge.
inline SparseMatrix walk_difference(const SignedGraph& g, unsigned l) {
  if (l < 1) throw ConfigError("walk length must be >= 1");
  return g.pos().power(l) - detail::sandwich_sum(g.pos(), g.neg(), l - 1);
}

/// Length weights: 1 for l = 1, 1/l! strictly between, and the remainder
/// 1 - sum_{l=2}^{L'-1} 1/l! at l = L'.
inline std::vector<double> walk_weights(unsigned l_max) {
  if (l_max < 1) throw ConfigError("walk length bound must be >= 1");
  std::vector<double> alpha(l_max, 0.0);
  alpha[0] = 1.0;
  double tail = 0.0;
  double factorial = 1.0;
  for (unsigned l = 2; l < l_max; ++l) {
    factorial *= l;
    alpha[l - 1] = 1.0 / factorial;
    tail += alpha[l - 1];
  }
  if (l_max >= 2) alpha[l_max - 1] = 1.0 - tail;
  return alpha;
}

/// Gamma(L') = sum_l alpha_l (mu+_l - mu-_l).
inline SparseMatrix nonnoise_scores(const SignedGraph& g, unsigned l_max) {
  const auto alpha = walk_weights(l_max);
  const SparseMatrix& p = g.pos();
  const SparseMatrix& m = g.neg();
  // Track P^l and the negative-walk sum N_l = P N_{l-1} + M P^{l-1} together.
  SparseMatrix p_pow = p;
  SparseMatrix neg_walks = m;
  SparseMatrix gamma = alpha[0] * (p_pow - neg_walks);
  for (unsigned l = 2; l <= l_max; ++l) {
    neg_walks = p * neg_walks + m * p_pow;
    p_pow = p_pow * p;
    gamma = gamma + alpha[l - 1] * (p_pow - neg_walks);
  }
  return gamma;
}

/// Sign refinement: +1 where Gamma > delta+, -1 where Gamma < delta-, the
/// original sign otherwise. Without edges_only this may add new edges.
inline SignedGraph violation_sign_refine(const SignedGraph& g, const VsrParams& params) {
  params.validate();
  const std::size_t n = g.num_nodes();
  const SparseMatrix a = g.adjacency();
  const SparseMatrix gamma = nonnoise_scores(g, params.l_max);

  std::vector<Entry> decided;
  std::vector<Entry> mask;
  for (const auto& e : gamma.entries()) {
    if (e.row == e.col) continue;
    int sign = 0;
    if (e.value > params.delta_plus) {
      sign = 1;
    } else if (e.value < params.delta_minus) {
      sign = -1;
    }
    if (sign == 0) continue;
    if (params.edges_only && a.coeff(e.row, e.col) == 0.0) continue;
    decided.push_back({e.row, e.col, static_cast<double>(sign)});
    mask.push_back({e.row, e.col, 1.0});
  }
  const SparseMatrix overrides = SparseMatrix::from_entries(n, n, decided);
  const SparseMatrix touched = SparseMatrix::from_entries(n, n, mask);
  const SparseMatrix refined = (a - a.cwise_product(touched) + overrides).without_diagonal();
  return SignedGraph::from_adjacency(refined, g.labels());
}

/// A'+ = (A+)^{m+}, A'- = sum_{a=0}^{m-} (A+)^a A- (A+)^{m- - a}, each binarized
/// off the diagonal. The channels are binarized independently and may overlap.
inline SignedGraph density_augment(const SignedGraph& g, const DaParams& params) {
  params.validate();
  const SparseMatrix pos = g.pos().power(params.m_plus).positive_indicator().without_diagonal();
  const SparseMatrix neg =
      detail::sandwich_sum(g.pos(), g.neg(), params.m_minus).positive_indicator().without_diagonal();
  return SignedGraph::from_channels(pos, neg, ChannelPolicy::AllowOverlap, g.labels());
}

inline constexpr double kNoThreshold = std::numeric_limits<double>::infinity();

}  // namespace dsgc::rewire
