#pragma once

// Experiment orchestration: config-driven sweeps over (dataset, method, seed),
// perturbation curves, VS-R gain tables and result export.

#include "dsgc/cluster_head.hpp"
#include "dsgc/correlation.hpp"
#include "dsgc/features.hpp"
#include "dsgc/io.hpp"
#include "dsgc/metrics.hpp"
#include "dsgc/rewiring.hpp"
#include "dsgc/spectral.hpp"
#include "dsgc/ssbm.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace dsgc::harness {

inline constexpr const char* kResultsHeader = "dataset,method,seed,acc,nmi,ari,f1,vr_before,vr_after,soen,auc,seconds";
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

struct SsbmDataset {
  SsbmParams params;  // params.seed is replaced by the run seed
};

struct EdgeListDataset {
  std::filesystem::path path;
  std::optional<std::filesystem::path> labels;
  std::size_t k = 2;
};

struct TimeSeriesDataset {
  std::filesystem::path path;
  double threshold = 0.0;
  std::size_t k = 2;
};

using DatasetSpec = std::variant<SsbmDataset, EdgeListDataset, TimeSeriesDataset>;

struct RewiringConfig {
  bool vsr = true;
  bool da = true;
  rewire::VsrParams vsr_params;
  rewire::DaParams da_params;
  bool baselines_on_rewired = false;  // spectral methods see the VS-R/DA graph too
};

struct DsgcConfig {
  nn::EncoderConfig encoder;
  nn::TrainConfig training;
  bool regularizer = true;        // false = "w/o Regu"
  bool loss_on_original = false;  // loss graph: raw input instead of the rewired graph
};

struct SpectralConfig {
  double tau_plus = 1.0;
  double tau_minus = 1.0;
  std::size_t kmeans_restarts = 50;
};

struct ExperimentConfig {
  std::string name = "experiment";
  DatasetSpec dataset = SsbmDataset{};
  std::vector<std::string> methods = {"dsgc"};
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4};
  RewiringConfig rewiring;
  DsgcConfig dsgc;
  SpectralConfig spectral;
  std::optional<double> auc_mask_prob;
  std::filesystem::path output_dir = "results";
  bool export_artifacts = false;  // assignment, loss history, embeddings per DSGC run

  void validate() const;
};

inline bool is_known_method(const std::string& m) { return m == "dsgc" || spectral::parse_kind(m).has_value(); }

inline void ExperimentConfig::validate() const {
  if (seeds.empty()) throw ConfigError("config needs at least one seed");
  if (methods.empty()) throw ConfigError("config needs at least one method");
  for (const auto& m : methods) {
    if (!is_known_method(m)) throw ConfigError("unknown method '" + m + "'");
  }
  rewiring.vsr_params.validate();
  rewiring.da_params.validate();
  dsgc.training.validate();
  if (auc_mask_prob && !(*auc_mask_prob > 0.0 && *auc_mask_prob < 1.0)) {
    throw ConfigError("auc_mask_prob must lie in (0,1)");
  }
  std::visit(
      [](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, SsbmDataset>) {
          d.params.validate();
        } else {
          if (!std::filesystem::exists(d.path)) throw ConfigError("dataset file '" + d.path.string() + "' not found");
          if (d.k < 1) throw ConfigError("dataset k must be >= 1");
          if constexpr (std::is_same_v<T, EdgeListDataset>) {
            if (d.labels && !std::filesystem::exists(*d.labels)) {
              throw ConfigError("label file '" + d.labels->string() + "' not found");
            }
          }
        }
      },
      dataset);
}

// ---------------------------------------------------------------- JSON config

namespace detail {

template <typename T>
void read_opt(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

}  // namespace detail

/// Every field is optional; omitted fields keep the defaults above.
inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  try {
    detail::read_opt(j, "name", cfg.name);
    if (j.contains("dataset")) {
      const auto& d = j.at("dataset");
      const std::string type = d.value("type", "ssbm");
      if (type == "ssbm") {
        SsbmDataset s;
        detail::read_opt(d, "n", s.params.n);
        detail::read_opt(d, "k", s.params.k);
        detail::read_opt(d, "p", s.params.p);
        detail::read_opt(d, "eta", s.params.eta);
        cfg.dataset = s;
      } else if (type == "edge-list") {
        EdgeListDataset e;
        e.path = d.at("path").get<std::string>();
        if (d.contains("labels")) e.labels = std::filesystem::path(d.at("labels").get<std::string>());
        detail::read_opt(d, "k", e.k);
        cfg.dataset = e;
      } else if (type == "time-series") {
        TimeSeriesDataset t;
        t.path = d.at("path").get<std::string>();
        detail::read_opt(d, "threshold", t.threshold);
        detail::read_opt(d, "k", t.k);
        cfg.dataset = t;
      } else {
        throw ConfigError("unknown dataset type '" + type + "'");
      }
    }
    detail::read_opt(j, "methods", cfg.methods);
    detail::read_opt(j, "seeds", cfg.seeds);
    if (j.contains("rewiring")) {
      const auto& r = j.at("rewiring");
      detail::read_opt(r, "vsr", cfg.rewiring.vsr);
      detail::read_opt(r, "da", cfg.rewiring.da);
      detail::read_opt(r, "vsr_lmax", cfg.rewiring.vsr_params.l_max);
      detail::read_opt(r, "delta_plus", cfg.rewiring.vsr_params.delta_plus);
      detail::read_opt(r, "delta_minus", cfg.rewiring.vsr_params.delta_minus);
      detail::read_opt(r, "edges_only", cfg.rewiring.vsr_params.edges_only);
      detail::read_opt(r, "m_plus", cfg.rewiring.da_params.m_plus);
      detail::read_opt(r, "m_minus", cfg.rewiring.da_params.m_minus);
      detail::read_opt(r, "baselines_on_rewired", cfg.rewiring.baselines_on_rewired);
    }
    if (j.contains("encoder")) {
      const auto& e = j.at("encoder");
      detail::read_opt(e, "layers", cfg.dsgc.encoder.layers);
      detail::read_opt(e, "hidden", cfg.dsgc.encoder.hidden);
      detail::read_opt(e, "eps_pos", cfg.dsgc.encoder.eps_pos);
      detail::read_opt(e, "eps_neg", cfg.dsgc.encoder.eps_neg);
      if (e.contains("variant")) cfg.dsgc.encoder.variant = nn::parse_variant(e.at("variant").get<std::string>());
    }
    if (j.contains("training")) {
      const auto& t = j.at("training");
      detail::read_opt(t, "lambda", cfg.dsgc.training.lambda);
      detail::read_opt(t, "lr", cfg.dsgc.training.learning_rate);
      detail::read_opt(t, "epochs", cfg.dsgc.training.epochs);
      detail::read_opt(t, "regularizer", cfg.dsgc.regularizer);
      detail::read_opt(t, "loss_on_original", cfg.dsgc.loss_on_original);
    }
    if (j.contains("spectral")) {
      const auto& s = j.at("spectral");
      detail::read_opt(s, "tau_plus", cfg.spectral.tau_plus);
      detail::read_opt(s, "tau_minus", cfg.spectral.tau_minus);
      detail::read_opt(s, "kmeans_restarts", cfg.spectral.kmeans_restarts);
    }
    if (j.contains("auc_mask_prob") && !j.at("auc_mask_prob").is_null()) {
      cfg.auc_mask_prob = j.at("auc_mask_prob").get<double>();
    }
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
    detail::read_opt(j, "export_artifacts", cfg.export_artifacts);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return cfg;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

// ------------------------------------------------------------------ datasets

struct LoadedDataset {
  std::string id;
  SignedGraph graph;  // labels attached when known
  std::size_t k = 2;
};

inline std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

inline std::string ssbm_id(const SsbmParams& p) {
  return "ssbm(" + std::to_string(p.n) + ";" + std::to_string(p.k) + ";" + format_number(p.p) + ";" +
         format_number(p.eta) + ")";
}

inline LoadedDataset load_dataset(const DatasetSpec& spec, std::uint64_t seed) {
  return std::visit(
      [seed](const auto& d) -> LoadedDataset {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, SsbmDataset>) {
          SsbmParams p = d.params;
          p.seed = seed;
          return {ssbm_id(p), generate_ssbm(p), p.k};
        } else if constexpr (std::is_same_v<T, EdgeListDataset>) {
          SignedGraph g = io::read_edge_list(d.path);
          if (d.labels) g.set_labels(io::read_any_labels(*d.labels, g.num_nodes()));
          return {d.path.stem().string(), std::move(g), d.k};
        } else {
          const auto ts = io::read_time_series_csv(d.path);
          return {d.path.stem().string(), ingest_correlation(ts.values, d.threshold), d.k};
        }
      },
      spec);
}

// ------------------------------------------------------------------- methods

struct RewiredGraphs {
  SignedGraph refined;  // after VS-R (or the input when disabled)
  SignedGraph message;  // after VS-R and DA
};

inline RewiredGraphs rewire_graph(const SignedGraph& g, const RewiringConfig& cfg) {
  RewiredGraphs r;
  r.refined = cfg.vsr ? rewire::violation_sign_refine(g, cfg.vsr_params) : g;
  r.message = cfg.da ? rewire::density_augment(r.refined, cfg.da_params) : r.refined;
  return r;
}

struct MethodOutput {
  Labels labels;
  std::optional<nn::TrainResult> training;  // DSGC only
  std::optional<SignedGraph> refined;       // set when VS-R was applied
};

/// DSGC: rewire, spectral features of the input graph, train, argmax.
inline MethodOutput run_dsgc(const SignedGraph& g, std::size_t k, const ExperimentConfig& cfg, std::uint64_t seed,
                             const nn::EpochObserver& observer = {}) {
  const auto rw = rewire_graph(g, cfg.rewiring);
  const DenseMatrix x = spectral_features(g, k);
  nn::TrainConfig tc = cfg.dsgc.training;
  tc.seed = seed;
  if (!cfg.dsgc.regularizer) tc.lambda = 0.0;
  const SignedGraph& loss_graph = cfg.dsgc.loss_on_original ? g : rw.message;
  MethodOutput out;
  out.training = nn::train(rw.message, loss_graph, x, k, cfg.dsgc.encoder, tc, observer);
  out.labels = out.training->assignment.hard;
  if (cfg.rewiring.vsr) out.refined = rw.refined;
  return out;
}

inline spectral::SpectralMethod spectral_method(spectral::SpectralKind kind, std::size_t k, const SpectralConfig& s) {
  spectral::SpectralMethod m;
  m.kind = kind;
  m.k = k;
  m.tau_plus = s.tau_plus;
  m.tau_minus = s.tau_minus;
  m.kmeans_restarts = s.kmeans_restarts;
  return m;
}

inline MethodOutput run_method(const std::string& method, const SignedGraph& g, std::size_t k,
                               const ExperimentConfig& cfg, std::uint64_t seed) {
  if (method == "dsgc") return run_dsgc(g, k, cfg, seed);
  const auto kind = spectral::parse_kind(method);
  if (!kind) throw ConfigError("unknown method '" + method + "'");
  MethodOutput out;
  const SignedGraph* input = &g;
  RewiredGraphs rw;
  if (cfg.rewiring.baselines_on_rewired) {
    rw = rewire_graph(g, cfg.rewiring);
    input = &rw.message;
    if (cfg.rewiring.vsr) out.refined = rw.refined;
  }
  out.labels = spectral::spectral_cluster(*input, spectral_method(*kind, k, cfg.spectral), seed);
  return out;
}

// --------------------------------------------------------------- experiments

struct ResultRow {
  std::string dataset;
  std::string method;
  std::string seed;  // "mean" for summary rows
  double acc = kMissing;
  double nmi = kMissing;
  double ari = kMissing;
  double f1 = kMissing;
  double vr_before = kMissing;
  double vr_after = kMissing;
  double soen = kMissing;
  double auc = kMissing;
  double seconds = kMissing;
  std::string error;  // empty when the row succeeded
};

inline std::string csv_cell(double v) {
  if (std::isnan(v)) return "";
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

inline void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kResultsHeader << "\n";
  for (const auto& r : rows) {
    out << r.dataset << ',' << r.method << ',' << r.seed << ',' << csv_cell(r.acc) << ',' << csv_cell(r.nmi) << ','
        << csv_cell(r.ari) << ',' << csv_cell(r.f1) << ',' << csv_cell(r.vr_before) << ',' << csv_cell(r.vr_after)
        << ',' << csv_cell(r.soen) << ',' << csv_cell(r.auc) << ',' << csv_cell(r.seconds) << "\n";
  }
}

/// Mean over the successful rows of each (dataset, method); NaN cells are skipped.
inline std::vector<ResultRow> summarize(const std::vector<ResultRow>& rows) {
  std::vector<std::pair<std::string, std::string>> keys;
  std::map<std::pair<std::string, std::string>, std::vector<const ResultRow*>> groups;
  for (const auto& r : rows) {
    if (!r.error.empty()) continue;
    auto key = std::make_pair(r.dataset, r.method);
    if (!groups.count(key)) keys.push_back(key);
    groups[key].push_back(&r);
  }
  std::vector<ResultRow> out;
  for (const auto& key : keys) {
    const auto& g = groups[key];
    ResultRow s;
    s.dataset = key.first;
    s.method = key.second;
    s.seed = "mean";
    auto mean = [&g](double ResultRow::*field) {
      double sum = 0.0;
      std::size_t count = 0;
      for (const auto* r : g) {
        if (!std::isnan(r->*field)) {
          sum += r->*field;
          ++count;
        }
      }
      return count ? sum / static_cast<double>(count) : kMissing;
    };
    for (auto field : {&ResultRow::acc, &ResultRow::nmi, &ResultRow::ari, &ResultRow::f1, &ResultRow::vr_before,
                       &ResultRow::vr_after, &ResultRow::soen, &ResultRow::auc, &ResultRow::seconds}) {
      s.*field = mean(field);
    }
    out.push_back(std::move(s));
  }
  return out;
}

namespace detail {

inline double try_violation_ratio(const SignedGraph& g, const Labels& labels) {
  try {
    return violation_ratio(g, labels);
  } catch (const DegenerateError&) {
    return kMissing;
  }
}

}  // namespace detail

/// One (dataset, method, seed) job.
inline ResultRow run_row(const ExperimentConfig& cfg, const LoadedDataset& data, const std::string& method,
                         std::uint64_t seed) {
  ResultRow row;
  row.dataset = data.id;
  row.method = method;
  row.seed = std::to_string(seed);
  const auto start = std::chrono::steady_clock::now();
  const auto& truth = data.graph.labels();
  const MethodOutput out = run_method(method, data.graph, data.k, cfg, seed);
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (truth) {
    row.acc = metrics::accuracy(out.labels, *truth);
    row.nmi = metrics::nmi(out.labels, *truth);
    row.ari = metrics::ari(out.labels, *truth);
    row.f1 = metrics::f1(out.labels, *truth);
    row.vr_before = detail::try_violation_ratio(data.graph, *truth);
    row.vr_after = out.refined ? detail::try_violation_ratio(*out.refined, *truth) : row.vr_before;
  }
  if (out.training) {
    try {
      row.soen = metrics::soen(out.training->embeddings, data.graph);
    } catch (const DegenerateError&) {
    }
  }
  if (cfg.auc_mask_prob) {
    const auto split = metrics::mask_edges(data.graph, *cfg.auc_mask_prob, derive_seed(seed, 0xA0C));
    const auto visible = run_method(method, split.visible, data.k, cfg, seed);
    try {
      row.auc = metrics::masked_auc(split, visible.labels);
    } catch (const DegenerateError&) {
    }
  }
  if (cfg.export_artifacts && out.training) {
    const auto stem = cfg.output_dir / "artifacts" / (data.id + "_" + method + "_seed" + row.seed);
    io::write_assignment_csv(stem.string() + "_assignment.csv", out.training->assignment);
    io::write_loss_history_csv(stem.string() + "_loss.csv", out.training->history);
    io::write_matrix_csv(stem.string() + "_embeddings.csv", out.training->embeddings);
  }
  return row;
}

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<ResultRow> summary;
  std::size_t failures = 0;
};

/// Runs every (method, seed) pair; a failing row is recorded and the sweep continues.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg, std::ostream* log = nullptr) {
  cfg.validate();
  ExperimentResult res;
  std::optional<LoadedDataset> shared;
  const bool per_seed_graph = std::holds_alternative<SsbmDataset>(cfg.dataset);
  for (const auto seed : cfg.seeds) {
    std::optional<LoadedDataset> local;
    try {
      if (per_seed_graph) {
        local = load_dataset(cfg.dataset, seed);
      } else if (!shared) {
        shared = load_dataset(cfg.dataset, seed);
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      for (const auto& m : cfg.methods) {
        ResultRow row;
        row.dataset = cfg.name;
        row.method = m;
        row.seed = std::to_string(seed);
        row.error = e.what();
        res.rows.push_back(row);
        ++res.failures;
      }
      continue;
    }
    const LoadedDataset& data = per_seed_graph ? *local : *shared;
    for (const auto& m : cfg.methods) {
      try {
        res.rows.push_back(run_row(cfg, data, m, seed));
        if (log) {
          const auto& r = res.rows.back();
          *log << r.dataset << ' ' << r.method << " seed " << r.seed << " acc " << csv_cell(r.acc) << " ("
               << csv_cell(r.seconds) << "s)\n";
        }
      } catch (const std::exception& e) {
        ResultRow row;
        row.dataset = data.id;
        row.method = m;
        row.seed = std::to_string(seed);
        row.error = e.what();
        res.rows.push_back(row);
        ++res.failures;
        if (log) *log << data.id << ' ' << m << " seed " << seed << " FAILED: " << e.what() << "\n";
      }
    }
  }
  res.summary = summarize(res.rows);
  return res;
}

/// Writes results.csv, summary.csv and (when any row failed) errors.csv.
inline void write_experiment(const ExperimentResult& res, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "results.csv");
    write_results_csv(out, res.rows);
  }
  {
    std::ofstream out(dir / "summary.csv");
    write_results_csv(out, res.summary);
  }
  if (res.failures > 0) {
    std::ofstream out(dir / "errors.csv");
    out << "dataset,method,seed,error\n";
    for (const auto& r : res.rows) {
      if (r.error.empty()) continue;
      std::string msg = r.error;
      for (auto& c : msg) {
        if (c == ',' || c == '\n') c = ';';
      }
      out << r.dataset << ',' << r.method << ',' << r.seed << ',' << msg << "\n";
    }
  }
}

// -------------------------------------------------------------- perturbation

enum class PerturbMode { Flip, AddNegative };

inline PerturbMode parse_perturb_mode(const std::string& s) {
  if (s == "flip") return PerturbMode::Flip;
  if (s == "add-negative") return PerturbMode::AddNegative;
  throw ConfigError("unknown perturbation mode '" + s + "'");
}

inline std::string to_string(PerturbMode m) { return m == PerturbMode::Flip ? "flip" : "add-negative"; }

struct PerturbPoint {
  PerturbMode mode;
  double ratio;
  std::string method;
  std::uint64_t seed;
  double acc;
  double nmi;
  std::size_t edges_added;
};

/// Graph for one point of the curve. Flip mode regenerates with eta = ratio;
/// add-negative mode inserts round(ratio*|E|) negative edges into the base graph.
inline SignedGraph perturbed_graph(const SsbmParams& base, PerturbMode mode, double ratio, std::uint64_t seed) {
  if (!(ratio >= 0.0 && ratio < 0.5)) throw ConfigError("perturbation ratio must lie in [0,0.5)");
  SsbmParams p = base;
  p.seed = seed;
  if (mode == PerturbMode::Flip) {
    p.eta = ratio;
    return generate_ssbm(p);
  }
  return add_random_negative_edges(generate_ssbm(p), ratio, derive_seed(seed, 0xADD));
}

inline std::vector<PerturbPoint> perturbation_sweep(const SsbmParams& base, PerturbMode mode,
                                                    const std::vector<double>& ratios,
                                                    const std::vector<std::string>& methods,
                                                    const ExperimentConfig& cfg) {
  for (double r : ratios) {
    if (!(r >= 0.0 && r < 0.5)) throw ConfigError("perturbation ratio must lie in [0,0.5)");
  }
  std::vector<PerturbPoint> out;
  for (double ratio : ratios) {
    for (auto seed : cfg.seeds) {
      const SignedGraph g = perturbed_graph(base, mode, ratio, seed);
      SsbmParams p = base;
      p.seed = seed;
      const std::size_t base_edges = mode == PerturbMode::AddNegative ? generate_ssbm(p).num_edges() : g.num_edges();
      for (const auto& m : methods) {
        const auto labels = run_method(m, g, base.k, cfg, seed).labels;
        out.push_back({mode, ratio, m, seed, metrics::accuracy(labels, *g.labels()), metrics::nmi(labels, *g.labels()),
                       g.num_edges() - base_edges});
      }
    }
  }
  return out;
}

inline void write_perturbation_csv(std::ostream& out, const std::vector<PerturbPoint>& pts) {
  out << "mode,ratio,method,seed,acc,nmi,edges_added\n";
  for (const auto& p : pts) {
    out << to_string(p.mode) << ',' << p.ratio << ',' << p.method << ',' << p.seed << ',' << csv_cell(p.acc) << ','
        << csv_cell(p.nmi) << ',' << p.edges_added << "\n";
  }
}

/// Mean accuracy per (ratio, method).
inline std::map<std::pair<double, std::string>, double> mean_accuracy(const std::vector<PerturbPoint>& pts) {
  std::map<std::pair<double, std::string>, std::pair<double, std::size_t>> acc;
  for (const auto& p : pts) {
    auto& a = acc[{p.ratio, p.method}];
    a.first += p.acc;
    ++a.second;
  }
  std::map<std::pair<double, std::string>, double> out;
  for (const auto& [k, v] : acc) out[k] = v.first / static_cast<double>(v.second);
  return out;
}

// ------------------------------------------------------------------ VS-R gain

struct VsrGainRow {
  std::string dataset;
  std::string method;
  std::uint64_t seed;
  double acc_before, acc_after;
  double nmi_before, nmi_after;
  double vr_before, vr_after;
};

/// Each spectral method on the original and on the VS-R refined graph.
inline std::vector<VsrGainRow> vsr_gain_study(const std::vector<SsbmParams>& graphs,
                                              const std::vector<spectral::SpectralKind>& kinds,
                                              const ExperimentConfig& cfg, std::ostream* log = nullptr) {
  std::vector<VsrGainRow> out;
  for (const auto& params : graphs) {
    for (auto seed : cfg.seeds) {
      SsbmParams p = params;
      p.seed = seed;
      const SignedGraph g = generate_ssbm(p);
      const SignedGraph refined = rewire::violation_sign_refine(g, cfg.rewiring.vsr_params);
      const Labels& truth = *g.labels();
      const double vr_before = detail::try_violation_ratio(g, truth);
      const double vr_after = detail::try_violation_ratio(refined, truth);
      for (auto kind : kinds) {
        const auto method = spectral_method(kind, p.k, cfg.spectral);
        const auto before = spectral::spectral_cluster(g, method, seed);
        const auto after = spectral::spectral_cluster(refined, method, seed);
        out.push_back({ssbm_id(p), spectral::to_string(kind), seed, metrics::accuracy(before, truth),
                       metrics::accuracy(after, truth), metrics::nmi(before, truth), metrics::nmi(after, truth),
                       vr_before, vr_after});
        if (log) {
          *log << out.back().dataset << ' ' << out.back().method << " seed " << seed << " acc "
               << out.back().acc_before << " -> " << out.back().acc_after << "\n";
        }
      }
    }
  }
  return out;
}

inline void write_vsr_gain_csv(std::ostream& out, const std::vector<VsrGainRow>& rows) {
  out << "dataset,method,seed,acc_before,acc_after,acc_delta,nmi_before,nmi_after,nmi_delta,vr_before,vr_after\n";
  for (const auto& r : rows) {
    out << r.dataset << ',' << r.method << ',' << r.seed << ',' << csv_cell(r.acc_before) << ','
        << csv_cell(r.acc_after) << ',' << csv_cell(r.acc_after - r.acc_before) << ',' << csv_cell(r.nmi_before)
        << ',' << csv_cell(r.nmi_after) << ',' << csv_cell(r.nmi_after - r.nmi_before) << ','
        << csv_cell(r.vr_before) << ',' << csv_cell(r.vr_after) << "\n";
  }
}

}  // namespace dsgc::harness
