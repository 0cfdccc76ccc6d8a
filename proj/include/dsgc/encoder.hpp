#pragma once

#include "dsgc/errors.hpp"
#include "dsgc/random.hpp"
#include "dsgc/signed_graph.hpp"

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace dsgc::nn {

enum class EncoderVariant {
  Dsgc,     // positive walks pull, negative walks push through (-Abar^-)
  WithEef,  // adds (Abar^-)^2 Z+(0) to the positive branch
  NoMinus,  // replaces (-Abar^-) with (+Abar^-)
};

inline EncoderVariant parse_variant(std::string_view s) {
  if (s == "dsgc") return EncoderVariant::Dsgc;
  if (s == "with-eef" || s == "with_eef") return EncoderVariant::WithEef;
  if (s == "no-minus" || s == "no_minus") return EncoderVariant::NoMinus;
  throw ConfigError("unknown encoder variant '" + std::string(s) + "'");
}

inline std::string to_string(EncoderVariant v) {
  switch (v) {
    case EncoderVariant::Dsgc: return "dsgc";
    case EncoderVariant::WithEef: return "with-eef";
    case EncoderVariant::NoMinus: return "no-minus";
  }
  return "dsgc";
}

struct EncoderConfig {
  unsigned layers = 2;
  unsigned hidden = 32;
  double eps_pos = 1.0;
  double eps_neg = 1.0;
  EncoderVariant variant = EncoderVariant::Dsgc;
};

/// Trainable encoder tensors. W0 maps d0 -> d, W1 maps d -> d, omega holds
/// one mixing weight per layer 0..L.
struct EncoderParams {
  DenseMatrix w0_pos, w0_neg;
  DenseMatrix w1_pos, w1_neg;
  DenseVector omega_pos, omega_neg;

  unsigned layers() const { return static_cast<unsigned>(omega_pos.size()) - 1; }
  Eigen::Index input_dim() const { return w0_pos.rows(); }
  Eigen::Index hidden() const { return w0_pos.cols(); }

  /// W ~ U(-1/sqrt(fan_in), 1/sqrt(fan_in)); omega = 1/(L+1).
  static EncoderParams init(Eigen::Index input_dim, const EncoderConfig& cfg, Rng& rng) {
    const auto d = static_cast<Eigen::Index>(cfg.hidden);
    auto uniform = [&rng](Eigen::Index rows, Eigen::Index cols) {
      const double bound = 1.0 / std::sqrt(static_cast<double>(rows));
      DenseMatrix m(rows, cols);
      for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = bound * (2.0 * unit_uniform(rng) - 1.0);
      }
      return m;
    };
    EncoderParams p;
    p.w0_pos = uniform(input_dim, d);
    p.w1_pos = uniform(d, d);
    p.w0_neg = uniform(input_dim, d);
    p.w1_neg = uniform(d, d);
    p.omega_pos = DenseVector::Constant(cfg.layers + 1, 1.0 / (cfg.layers + 1.0));
    p.omega_neg = p.omega_pos;
    return p;
  }

  void check_consistent() const {
    if (w0_neg.rows() != w0_pos.rows() || w0_neg.cols() != w0_pos.cols() ||
        w1_pos.rows() != hidden() || w1_pos.cols() != hidden() || w1_neg.rows() != hidden() ||
        w1_neg.cols() != hidden()) {
      throw ConfigError("encoder weight shapes are inconsistent");
    }
    if (omega_pos.size() < 1 || omega_neg.size() != omega_pos.size()) {
      throw ConfigError("encoder layer weights must have L+1 entries in both branches");
    }
  }
};

/// Row-normalized self-looped channels Abar = (D~)^-1 (A'' + eps I).
struct PropagationMatrices {
  SparseMatrix abar_pos;
  SparseMatrix abar_neg;
  SparseMatrix abar_pos_t;
  SparseMatrix abar_neg_t;

  std::size_t num_nodes() const { return abar_pos.rows(); }
};

namespace detail {

inline SparseMatrix row_normalize_with_loops(const SparseMatrix& a, double eps) {
  const std::size_t n = a.rows();
  const SparseMatrix looped = a + eps * SparseMatrix::identity(n);
  DenseVector inv = looped.row_sums();
  for (Eigen::Index i = 0; i < inv.size(); ++i) inv[i] = inv[i] != 0.0 ? 1.0 / inv[i] : 0.0;
  return looped.scale_rows(inv);
}

}  // namespace detail

/// Zero-degree rows (no edges and eps = 0) stay zero.
inline PropagationMatrices build_propagation(const SignedGraph& g, double eps_pos, double eps_neg) {
  if (!(eps_pos >= 0.0) || !(eps_neg >= 0.0)) throw ConfigError("self-loop weights must be >= 0");
  PropagationMatrices p;
  p.abar_pos = detail::row_normalize_with_loops(g.pos(), eps_pos);
  p.abar_neg = detail::row_normalize_with_loops(g.neg(), eps_neg);
  p.abar_pos_t = p.abar_pos.transpose();
  p.abar_neg_t = p.abar_neg.transpose();
  return p;
}

inline DenseMatrix relu(const DenseMatrix& m) { return m.cwiseMax(0.0); }

struct InitialEmbeddings {
  DenseMatrix pre_pos, pre_neg;  // X W0 (before ReLU)
  DenseMatrix act_pos, act_neg;  // relu(X W0)
  DenseMatrix z0_pos, z0_neg;    // relu(X W0) W1
};

inline InitialEmbeddings initial_embeddings(const DenseMatrix& x, const EncoderParams& params) {
  params.check_consistent();
  if (x.cols() != params.input_dim()) {
    throw ConfigError("feature width " + std::to_string(x.cols()) + " does not match encoder input " +
                      std::to_string(params.input_dim()));
  }
  InitialEmbeddings e;
  e.pre_pos = x * params.w0_pos;
  e.pre_neg = x * params.w0_neg;
  e.act_pos = relu(e.pre_pos);
  e.act_neg = relu(e.pre_neg);
  e.z0_pos = e.act_pos * params.w1_pos;
  e.z0_neg = e.act_neg * params.w1_neg;
  return e;
}

/// Everything the backward pass needs.
struct ForwardCache {
  InitialEmbeddings init;
  std::vector<DenseMatrix> pos_layers;  // Z+(l), l = 0..L
  std::vector<DenseMatrix> neg_layers;  // Z-(l), l = 0..L
  DenseMatrix z_pos, z_neg;
  EncoderVariant variant = EncoderVariant::Dsgc;
};

struct ForwardResult {
  DenseMatrix z;  // [Z+ | Z-], |V| x 2d
  ForwardCache cache;
};

namespace detail {

inline double negative_sign(EncoderVariant v) { return v == EncoderVariant::NoMinus ? 1.0 : -1.0; }

/// Terms of sum_{b=0}^{l-1} P^b (s N) P^{l-1-b} Y for l = 1..L, via
/// S_l = P S_{l-1} + s N P^{l-1} Y with S_0 = 0.
inline std::vector<DenseMatrix> negative_walk_terms(const SparseMatrix& p, const SparseMatrix& nmat,
                                                    double s, const DenseMatrix& y, unsigned layers) {
  std::vector<DenseMatrix> out;
  out.reserve(layers);
  DenseMatrix p_pow_y = y;
  DenseMatrix acc = DenseMatrix::Zero(y.rows(), y.cols());
  for (unsigned l = 1; l <= layers; ++l) {
    acc = p * acc + s * (nmat * p_pow_y);
    out.push_back(acc);
    if (l < layers) p_pow_y = p * p_pow_y;
  }
  return out;
}

}  // namespace detail

/// Z+ = sum_l w+(l) (Abar+)^l Z+(0); Z- = sum_l w-(l) Z-(l) with
/// Z-(0) = Z-(0) and Z-(l) = sum_b (Abar+)^b (-Abar-) (Abar+)^{l-1-b} Z-(0).
inline ForwardResult forward(const DenseMatrix& x, const PropagationMatrices& prop,
                             const EncoderParams& params, EncoderVariant variant) {
  if (static_cast<std::size_t>(x.rows()) != prop.num_nodes()) {
    throw ConfigError("feature rows do not match the propagation matrices");
  }
  ForwardResult r;
  ForwardCache& c = r.cache;
  c.variant = variant;
  c.init = initial_embeddings(x, params);
  const unsigned layers = params.layers();

  c.pos_layers.reserve(layers + 1);
  c.pos_layers.push_back(c.init.z0_pos);
  for (unsigned l = 1; l <= layers; ++l) c.pos_layers.push_back(prop.abar_pos * c.pos_layers.back());

  c.neg_layers.reserve(layers + 1);
  c.neg_layers.push_back(c.init.z0_neg);
  for (auto& t : detail::negative_walk_terms(prop.abar_pos, prop.abar_neg, detail::negative_sign(variant),
                                             c.init.z0_neg, layers)) {
    c.neg_layers.push_back(std::move(t));
  }

  c.z_pos = DenseMatrix::Zero(x.rows(), params.hidden());
  c.z_neg = DenseMatrix::Zero(x.rows(), params.hidden());
  for (unsigned l = 0; l <= layers; ++l) {
    c.z_pos += params.omega_pos[l] * c.pos_layers[l];
    c.z_neg += params.omega_neg[l] * c.neg_layers[l];
  }
  if (variant == EncoderVariant::WithEef) {
    c.z_pos += prop.abar_neg * (prop.abar_neg * c.init.z0_pos);
  }

  r.z.resize(x.rows(), 2 * params.hidden());
  r.z << c.z_pos, c.z_neg;
  return r;
}

struct EncoderGradients {
  DenseMatrix w0_pos, w0_neg;
  DenseMatrix w1_pos, w1_neg;
  DenseVector omega_pos, omega_neg;
};

/// Reverse pass through the encoder given dLoss/dZ. ReLU subgradient at 0 is 0.
inline EncoderGradients encoder_backward(const DenseMatrix& x, const PropagationMatrices& prop,
                                         const EncoderParams& params, const ForwardCache& c,
                                         const DenseMatrix& dz) {
  const Eigen::Index d = params.hidden();
  if (dz.rows() != x.rows() || dz.cols() != 2 * d) throw ConfigError("gradient shape mismatch with cache");
  const unsigned layers = params.layers();
  const DenseMatrix dz_pos = dz.leftCols(d);
  const DenseMatrix dz_neg = dz.rightCols(d);

  EncoderGradients g;
  g.omega_pos.resize(layers + 1);
  g.omega_neg.resize(layers + 1);
  for (unsigned l = 0; l <= layers; ++l) {
    g.omega_pos[l] = (dz_pos.array() * c.pos_layers[l].array()).sum();
    g.omega_neg[l] = (dz_neg.array() * c.neg_layers[l].array()).sum();
  }

  // dZ+(0) = sum_l w+(l) (P^T)^l dZ+, Horner from the deepest layer.
  DenseMatrix dz0_pos = params.omega_pos[layers] * dz_pos;
  for (unsigned l = layers; l-- > 0;) dz0_pos = prop.abar_pos_t * dz0_pos + params.omega_pos[l] * dz_pos;
  if (c.variant == EncoderVariant::WithEef) dz0_pos += prop.abar_neg_t * (prop.abar_neg_t * dz_pos);

  // The adjoint of each negative term has the same shape with P, N transposed.
  DenseMatrix dz0_neg = params.omega_neg[0] * dz_neg;
  const auto adj = detail::negative_walk_terms(prop.abar_pos_t, prop.abar_neg_t,
                                               detail::negative_sign(c.variant), dz_neg, layers);
  for (unsigned l = 1; l <= layers; ++l) dz0_neg += params.omega_neg[l] * adj[l - 1];

  auto mlp_backward = [&x](const DenseMatrix& dz0, const DenseMatrix& pre, const DenseMatrix& act,
                           const DenseMatrix& w1, DenseMatrix& dw0, DenseMatrix& dw1) {
    dw1 = act.transpose() * dz0;
    const DenseMatrix dact = dz0 * w1.transpose();
    const DenseMatrix dpre = (pre.array() > 0.0).select(dact.array(), 0.0).matrix();
    dw0 = x.transpose() * dpre;
  };
  mlp_backward(dz0_pos, c.init.pre_pos, c.init.act_pos, params.w1_pos, g.w0_pos, g.w1_pos);
  mlp_backward(dz0_neg, c.init.pre_neg, c.init.act_neg, params.w1_neg, g.w0_neg, g.w1_neg);
  return g;
}

}  // namespace dsgc::nn
