#pragma once

#include "dsgc/encoder.hpp"
#include "dsgc/errors.hpp"
#include "dsgc/signed_graph.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace dsgc::nn {

/// Row-stochastic soft assignment and its argmax labels.
struct AssignmentMatrix {
  DenseMatrix pi;
  Labels hard;
};

struct HeadParams {
  DenseMatrix theta;  // 2d x K, one column per cluster

  static HeadParams init(Eigen::Index width, Eigen::Index k, Rng& rng) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(width));
    HeadParams h;
    h.theta.resize(width, k);
    for (Eigen::Index c = 0; c < k; ++c) {
      for (Eigen::Index r = 0; r < width; ++r) h.theta(r, c) = bound * (2.0 * unit_uniform(rng) - 1.0);
    }
    return h;
  }
};

/// Lowest index wins ties.
inline Labels argmax_rows(const DenseMatrix& m) {
  Labels out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < m.cols(); ++k) {
      if (m(i, k) > m(i, best)) best = k;
    }
    out[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return out;
}

/// pi_i(k) = softmax_k(Z_i . theta_k), max-subtracted.
inline AssignmentMatrix assign(const DenseMatrix& z, const HeadParams& head) {
  if (z.cols() != head.theta.rows()) {
    throw ConfigError("embedding width " + std::to_string(z.cols()) + " does not match head height " +
                      std::to_string(head.theta.rows()));
  }
  DenseMatrix logits = z * head.theta;
  if (!logits.allFinite()) throw NumericalError("non-finite assignment logits");
  logits.colwise() -= logits.rowwise().maxCoeff();
  AssignmentMatrix a;
  a.pi = logits.array().exp().matrix();
  a.pi.array().colwise() /= a.pi.rowwise().sum().array();
  a.hard = argmax_rows(a.pi);
  return a;
}

/// Precomputed pieces of the loss for one graph: L+ + A- and the diagonal of Dbar.
struct LossOperator {
  SparseMatrix cut;  // D+ - A+ + A-
  DenseVector dbar;  // D+ + D-

  std::size_t num_nodes() const { return cut.rows(); }

  static LossOperator from_graph(const SignedGraph& g) {
    const auto deg = degree_matrices(g);
    return {deg.d_pos - g.pos() + g.neg(), deg.d_bar.diagonal_values()};
  }
};

struct LossBreakdown {
  double total = 0.0;
  double cut = 0.0;         // (1/|V|) sum_k Pi_k^T (L+ + A-) Pi_k
  double regularizer = 0.0; // -(1/|V|) sum_k Pi_k^T Dbar Pi_k
};

inline LossBreakdown clustering_loss(const DenseMatrix& pi, const LossOperator& op, double lambda) {
  if (static_cast<std::size_t>(pi.rows()) != op.num_nodes()) {
    throw ConfigError("assignment rows do not match the loss graph");
  }
  const double n = static_cast<double>(pi.rows());
  LossBreakdown b;
  b.cut = (pi.array() * (op.cut * pi).array()).sum() / n;
  b.regularizer = -(pi.array().square().colwise() * op.dbar.array()).sum() / n;
  b.total = b.cut + lambda * b.regularizer;
  return b;
}

inline LossBreakdown clustering_loss(const DenseMatrix& pi, const SignedGraph& g_loss, double lambda) {
  return clustering_loss(pi, LossOperator::from_graph(g_loss), lambda);
}

/// dLoss/dPi; both quadratic forms are symmetric so the factor is 2.
inline DenseMatrix loss_gradient_pi(const DenseMatrix& pi, const LossOperator& op, double lambda) {
  const double n = static_cast<double>(pi.rows());
  DenseMatrix g = (2.0 / n) * (op.cut * pi);
  g.array() -= (2.0 * lambda / n) * (pi.array().colwise() * op.dbar.array());
  return g;
}

struct Gradients {
  EncoderGradients encoder;
  DenseMatrix theta;
  LossBreakdown loss;
};

struct Evaluation {
  ForwardResult forward;
  AssignmentMatrix assignment;
  LossBreakdown loss;
};

inline Evaluation evaluate(const DenseMatrix& x, const PropagationMatrices& prop, const EncoderParams& enc,
                           const HeadParams& head, EncoderVariant variant, const LossOperator& op,
                           double lambda) {
  Evaluation e{forward(x, prop, enc, variant), {}, {}};
  e.assignment = assign(e.forward.z, head);
  e.loss = clustering_loss(e.assignment.pi, op, lambda);
  return e;
}

/// Exact gradients of the loss with respect to every trainable tensor.
inline Gradients gradients(const DenseMatrix& x, const PropagationMatrices& prop, const EncoderParams& enc,
                           const HeadParams& head, EncoderVariant variant, const LossOperator& op,
                           double lambda, const Evaluation* cached = nullptr) {
  const Evaluation local = cached ? Evaluation{} : evaluate(x, prop, enc, head, variant, op, lambda);
  const Evaluation& e = cached ? *cached : local;
  const DenseMatrix& pi = e.assignment.pi;

  const DenseMatrix dpi = loss_gradient_pi(pi, op, lambda);
  // Softmax Jacobian per row: dlogit = pi * (dpi - <pi, dpi>).
  const DenseVector inner = (pi.array() * dpi.array()).rowwise().sum();
  const DenseMatrix dlogits = (pi.array() * (dpi.array().colwise() - inner.array())).matrix();

  Gradients g;
  g.loss = e.loss;
  g.theta = e.forward.z.transpose() * dlogits;
  const DenseMatrix dz = dlogits * head.theta.transpose();
  g.encoder = encoder_backward(x, prop, enc, e.forward.cache, dz);
  return g;
}

struct TrainConfig {
  double lambda = 0.03;
  unsigned epochs = 600;
  double learning_rate = 0.01;
  std::uint64_t seed = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;

  void validate() const {
    if (!(lambda >= 0.0)) throw ConfigError("lambda must be >= 0");
    if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be > 0");
    if (!(beta1 >= 0.0 && beta1 < 1.0 && beta2 >= 0.0 && beta2 < 1.0)) {
      throw ConfigError("Adam betas must lie in [0,1)");
    }
  }
};

/// Adaptive moment estimation over a fixed list of tensors.
class Adam {
 public:
  explicit Adam(const TrainConfig& cfg) : cfg_(cfg) {}

  template <typename Tensor>
  void step(std::size_t slot, Tensor& param, const Tensor& grad) {
    if (slot >= m_.size()) {
      m_.resize(slot + 1);
      v_.resize(slot + 1);
    }
    auto& m = m_[slot];
    auto& v = v_[slot];
    if (m.size() == 0) {
      m = DenseMatrix::Zero(param.rows(), param.cols());
      v = DenseMatrix::Zero(param.rows(), param.cols());
    }
    const auto g = grad.reshaped(param.rows(), param.cols());
    m = cfg_.beta1 * m + (1.0 - cfg_.beta1) * g;
    v = cfg_.beta2 * v + (1.0 - cfg_.beta2) * g.cwiseProduct(g);
    const double c1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
    param.array() -= cfg_.learning_rate * (m.array() / c1) / ((v.array() / c2).sqrt() + cfg_.adam_eps);
  }

  void next_iteration() { ++t_; }

 private:
  TrainConfig cfg_;
  std::vector<DenseMatrix> m_;
  std::vector<DenseMatrix> v_;
  long t_ = 1;
};

struct TrainResult {
  EncoderParams encoder;
  HeadParams head;
  AssignmentMatrix assignment;
  DenseMatrix embeddings;
  std::vector<LossBreakdown> history;
};

/// Called after each optimizer step with the 1-based epoch and the refreshed state.
using EpochObserver = std::function<void(unsigned epoch, const Evaluation&)>;

/// Full-graph training. The encoder propagates over g_msg while the loss is
/// measured on g_loss; X is the node feature matrix.
inline TrainResult train(const SignedGraph& g_msg, const SignedGraph& g_loss, const DenseMatrix& x,
                         std::size_t k, const EncoderConfig& enc_cfg, const TrainConfig& cfg,
                         const EpochObserver& observer = {}) {
  cfg.validate();
  if (g_msg.num_nodes() != g_loss.num_nodes() || static_cast<std::size_t>(x.rows()) != g_msg.num_nodes()) {
    throw ConfigError("message graph, loss graph and features disagree on node count");
  }
  if (k < 1 || k > 2 * static_cast<std::size_t>(enc_cfg.hidden)) {
    throw ConfigError("cluster count must satisfy 1 <= K <= 2d");
  }
  Rng rng(cfg.seed);
  TrainResult r;
  r.encoder = EncoderParams::init(x.cols(), enc_cfg, rng);
  r.head = HeadParams::init(2 * static_cast<Eigen::Index>(enc_cfg.hidden), static_cast<Eigen::Index>(k), rng);

  const PropagationMatrices prop = build_propagation(g_msg, enc_cfg.eps_pos, enc_cfg.eps_neg);
  const LossOperator op = LossOperator::from_graph(g_loss);
  Adam adam(cfg);
  r.history.reserve(cfg.epochs);

  Evaluation current = evaluate(x, prop, r.encoder, r.head, enc_cfg.variant, op, cfg.lambda);
  for (unsigned epoch = 1; epoch <= cfg.epochs; ++epoch) {
    const Gradients g = gradients(x, prop, r.encoder, r.head, enc_cfg.variant, op, cfg.lambda, &current);
    if (!std::isfinite(g.loss.total)) {
      throw NumericalError("training diverged at epoch " + std::to_string(epoch) + ": non-finite loss");
    }
    r.history.push_back(g.loss);
    adam.step(0, r.encoder.w0_pos, g.encoder.w0_pos);
    adam.step(1, r.encoder.w0_neg, g.encoder.w0_neg);
    adam.step(2, r.encoder.w1_pos, g.encoder.w1_pos);
    adam.step(3, r.encoder.w1_neg, g.encoder.w1_neg);
    adam.step(4, r.encoder.omega_pos, g.encoder.omega_pos);
    adam.step(5, r.encoder.omega_neg, g.encoder.omega_neg);
    adam.step(6, r.head.theta, g.theta);
    adam.next_iteration();
    current = evaluate(x, prop, r.encoder, r.head, enc_cfg.variant, op, cfg.lambda);
    if (observer) observer(epoch, current);
  }
  r.assignment = current.assignment;
  r.embeddings = current.forward.z;
  return r;
}

}  // namespace dsgc::nn
