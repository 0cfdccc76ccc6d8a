// dsgc: command-line front end for generation, rewiring, clustering and sweeps.

#include "dsgc/dsgc.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace dsgc;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct SsbmOptions {
  SsbmParams params;
  void add(CLI::App* app) {
    app->add_option("--n", params.n, "number of nodes")->capture_default_str();
    app->add_option("--k", params.k, "number of clusters")->capture_default_str();
    app->add_option("--p", params.p, "edge probability")->capture_default_str();
    app->add_option("--eta", params.eta, "sign flip probability")->capture_default_str();
  }
};

// Flags shared by every command that runs DSGC or rewiring.
struct MethodOptions {
  harness::ExperimentConfig cfg;
  bool no_vsr = false;
  bool no_da = false;
  bool no_regu = false;
  std::string variant = "dsgc";

  void add_rewiring(CLI::App* app) {
    auto& v = cfg.rewiring.vsr_params;
    auto& d = cfg.rewiring.da_params;
    app->add_option("--vsr-lmax", v.l_max, "longest walk length L'")->capture_default_str();
    app->add_option("--vsr-delta-plus", v.delta_plus, "positive-edge threshold")->capture_default_str();
    app->add_option("--vsr-delta-minus", v.delta_minus, "negative-edge threshold")->capture_default_str();
    app->add_flag("--vsr-edges-only", v.edges_only, "only re-sign existing edges");
    app->add_option("--da-mplus", d.m_plus, "positive augmentation order")->capture_default_str();
    app->add_option("--da-mminus", d.m_minus, "negative augmentation order")->capture_default_str();
    app->add_flag("--no-vsr", no_vsr, "skip violation sign-refine");
    app->add_flag("--no-da", no_da, "skip density-based augmentation");
  }

  void add_model(CLI::App* app) {
    auto& e = cfg.dsgc.encoder;
    auto& t = cfg.dsgc.training;
    app->add_option("--layers", e.layers, "propagation depth L")->capture_default_str();
    app->add_option("--hidden-dim", e.hidden, "embedding width d per channel")->capture_default_str();
    app->add_option("--eps-pos", e.eps_pos, "positive self-loop weight")->capture_default_str();
    app->add_option("--eps-neg", e.eps_neg, "negative self-loop weight")->capture_default_str();
    app->add_option("--variant", variant, "encoder variant")
        ->check(CLI::IsMember({"dsgc", "with-eef", "no-minus"}))
        ->capture_default_str();
    app->add_option("--lambda", t.lambda, "regularizer weight")->capture_default_str();
    app->add_option("--lr", t.learning_rate, "Adam learning rate")->capture_default_str();
    app->add_option("--epochs", t.epochs, "training epochs")->capture_default_str();
    app->add_flag("--loss-on-original", cfg.dsgc.loss_on_original, "evaluate the loss on the input graph");
    app->add_flag("--no-regu", no_regu, "drop the regularizer (lambda = 0)");
    app->add_option("--tau-plus", cfg.spectral.tau_plus, "SPONGE tau+")->capture_default_str();
    app->add_option("--tau-minus", cfg.spectral.tau_minus, "SPONGE tau-")->capture_default_str();
  }

  void apply() {
    if (no_vsr) cfg.rewiring.vsr = false;
    if (no_da) cfg.rewiring.da = false;
    if (no_regu) cfg.dsgc.regularizer = false;
    cfg.dsgc.encoder.variant = nn::parse_variant(variant);
  }
};

SignedGraph load_graph(const std::string& edges, const std::string& labels) {
  SignedGraph g = io::read_edge_list(fs::path(edges));
  if (!labels.empty()) g.set_labels(io::read_any_labels(fs::path(labels), g.num_nodes()));
  return g;
}

void print_metrics(std::ostream& out, const Labels& pred, const Labels& truth) {
  out << "acc " << metrics::accuracy(pred, truth) << " nmi " << metrics::nmi(pred, truth) << " ari "
      << metrics::ari(pred, truth) << " f1 " << metrics::f1(pred, truth) << "\n";
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signed graph clustering toolkit"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "sample an SSBM graph");
  SsbmOptions gen_ssbm;
  gen_ssbm.add(gen);
  std::uint64_t gen_seed = 0;
  std::string gen_out, gen_labels_out;
  gen->add_option("--seed", gen_seed, "random seed")->capture_default_str();
  gen->add_option("--out", gen_out, "edge list output")->required();
  gen->add_option("--labels-out", gen_labels_out, "ground-truth label output");

  // rewire
  auto* rew = app.add_subcommand("rewire", "apply VS-R and DA to an edge list");
  MethodOptions rew_opt;
  rew_opt.add_rewiring(rew);
  std::string rew_in, rew_labels, rew_out;
  rew->add_option("--input", rew_in, "edge list")->required()->check(CLI::ExistingFile);
  rew->add_option("--labels", rew_labels, "ground-truth labels for violation ratios")->check(CLI::ExistingFile);
  rew->add_option("--out", rew_out, "rewired edge list")->required();

  // cluster
  auto* clu = app.add_subcommand("cluster", "cluster one graph with one method");
  MethodOptions clu_opt;
  clu_opt.add_rewiring(clu);
  clu_opt.add_model(clu);
  SsbmOptions clu_ssbm;
  clu_ssbm.add(clu);
  std::string clu_in, clu_labels, clu_method = "dsgc", clu_out = "out";
  std::uint64_t clu_seed = 0;
  std::size_t clu_k = 0;
  clu->add_option("--input", clu_in, "edge list (omit to sample an SSBM)")->check(CLI::ExistingFile);
  clu->add_option("--labels", clu_labels, "ground-truth labels")->check(CLI::ExistingFile);
  clu->add_option("--clusters", clu_k, "number of clusters for --input graphs");
  clu->add_option("--method", clu_method, "clustering method")
      ->check(CLI::IsMember({"a", "lsns", "ldns", "lbar", "lsym", "bnc", "brc", "sponge", "sponge-sym", "dsgc"}))
      ->capture_default_str();
  clu->add_option("--seed", clu_seed, "random seed")->capture_default_str();
  clu->add_option("--out-dir", clu_out, "output directory")->capture_default_str();

  // sweep
  auto* swp = app.add_subcommand("sweep", "run a JSON-configured experiment");
  std::string swp_config, swp_out;
  std::vector<std::uint64_t> swp_seeds;
  std::string swp_methods;
  swp->add_option("--config", swp_config, "experiment JSON")->required();
  swp->add_option("--out-dir", swp_out, "override output_dir");
  swp->add_option("--seeds", swp_seeds, "override seeds");
  swp->add_option("--methods", swp_methods, "override methods (comma separated)");

  // perturb
  auto* per = app.add_subcommand("perturb", "accuracy versus sign flips or added negative edges");
  MethodOptions per_opt;
  per_opt.add_rewiring(per);
  per_opt.add_model(per);
  SsbmOptions per_ssbm;
  per_ssbm.add(per);
  std::string per_mode = "flip", per_methods = "bnc,sponge", per_out = "perturb.csv";
  std::vector<double> per_ratios = {0.0, 0.02, 0.04, 0.06, 0.08};
  std::vector<std::uint64_t> per_seeds = {0, 1, 2, 3, 4};
  per->add_option("--mode", per_mode, "flip or add-negative")
      ->check(CLI::IsMember({"flip", "add-negative"}))
      ->capture_default_str();
  per->add_option("--ratios", per_ratios, "perturbation ratios in [0,0.5)");
  per->add_option("--methods", per_methods, "comma separated methods")->capture_default_str();
  per->add_option("--seeds", per_seeds, "seeds");
  per->add_option("--out", per_out, "curve CSV")->capture_default_str();

  // vsr-gain
  auto* gain = app.add_subcommand("vsr-gain", "spectral accuracy before and after VS-R");
  MethodOptions gain_opt;
  gain_opt.add_rewiring(gain);
  std::vector<std::string> gain_graphs = {"1000,5,0.01,0.04"};
  std::vector<std::uint64_t> gain_seeds = {0, 1, 2, 3, 4};
  std::string gain_out = "vsr_gain.csv";
  gain->add_option("--graph", gain_graphs, "SSBM as n,k,p,eta (repeatable)");
  gain->add_option("--seeds", gain_seeds, "seeds");
  gain->add_option("--out", gain_out, "gain CSV")->capture_default_str();

  // export-adjacency
  auto* exp = app.add_subcommand("export-adjacency", "cluster-sorted adjacency as CSV and PGM");
  std::string exp_in, exp_labels, exp_out;
  exp->add_option("--input", exp_in, "edge list")->required()->check(CLI::ExistingFile);
  exp->add_option("--labels", exp_labels, "cluster labels (`node cluster` or assignment CSV)")
      ->required()
      ->check(CLI::ExistingFile);
  exp->add_option("--out", exp_out, "output stem; writes <stem>.csv and <stem>.pgm")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*gen) {
      SsbmParams p = gen_ssbm.params;
      p.seed = gen_seed;
      const SignedGraph g = generate_ssbm(p);
      io::write_edge_list(fs::path(gen_out), g);
      if (!gen_labels_out.empty()) io::write_labels(fs::path(gen_labels_out), *g.labels());
      std::cout << "nodes " << g.num_nodes() << " positive " << g.num_positive_edges() << " negative "
                << g.num_negative_edges() << "\n";
      return kExitOk;
    }

    if (*rew) {
      rew_opt.apply();
      const SignedGraph g = load_graph(rew_in, rew_labels);
      const auto rw = harness::rewire_graph(g, rew_opt.cfg.rewiring);
      io::write_edge_list(fs::path(rew_out), rw.message);
      std::cout << "edges " << g.num_edges() << " -> " << rw.message.num_edges() << "\n";
      if (g.labels()) {
        std::cout << "violation ratio " << violation_ratio(g, *g.labels()) << " -> "
                  << violation_ratio(rw.refined, *g.labels()) << " (after VS-R)\n";
      }
      return kExitOk;
    }

    if (*clu) {
      clu_opt.apply();
      SignedGraph g;
      std::size_t k = clu_k;
      if (clu_in.empty()) {
        SsbmParams p = clu_ssbm.params;
        p.seed = clu_seed;
        g = generate_ssbm(p);
        if (k == 0) k = p.k;
      } else {
        g = load_graph(clu_in, clu_labels);
        if (k == 0) throw ConfigError("--clusters is required with --input");
      }
      const fs::path dir(clu_out);
      fs::create_directories(dir);
      if (clu_method == "dsgc") {
        auto out = harness::run_dsgc(g, k, clu_opt.cfg, clu_seed);
        io::write_assignment_csv(dir / "assignment.csv", out.training->assignment);
        io::write_loss_history_csv(dir / "loss_history.csv", out.training->history);
        io::write_matrix_csv(dir / "embeddings.csv", out.training->embeddings);
        io::write_labels_csv(dir / "labels.csv", out.labels);
        if (g.labels()) print_metrics(std::cout, out.labels, *g.labels());
      } else {
        const auto out = harness::run_method(clu_method, g, k, clu_opt.cfg, clu_seed);
        io::write_labels_csv(dir / "labels.csv", out.labels);
        if (g.labels()) print_metrics(std::cout, out.labels, *g.labels());
      }
      return kExitOk;
    }

    if (*swp) {
      auto cfg = harness::load_config(fs::path(swp_config));
      if (!swp_out.empty()) cfg.output_dir = swp_out;
      if (!swp_seeds.empty()) cfg.seeds = swp_seeds;
      if (!swp_methods.empty()) cfg.methods = split_list(swp_methods);
      const auto res = harness::run_experiment(cfg, &std::cerr);
      harness::write_experiment(res, cfg.output_dir);
      std::cout << "wrote " << (cfg.output_dir / "results.csv").string() << " (" << res.rows.size() << " rows, "
                << res.failures << " failed)\n";
      return res.failures == res.rows.size() && !res.rows.empty() ? kExitRuntime : kExitOk;
    }

    if (*per) {
      per_opt.apply();
      per_opt.cfg.seeds = per_seeds;
      const auto methods = split_list(per_methods);
      for (const auto& m : methods) {
        if (!harness::is_known_method(m)) throw ConfigError("unknown method '" + m + "'");
      }
      const auto pts = harness::perturbation_sweep(per_ssbm.params, harness::parse_perturb_mode(per_mode), per_ratios,
                                                   methods, per_opt.cfg);
      std::ofstream out(per_out);
      harness::write_perturbation_csv(out, pts);
      for (const auto& [key, acc] : harness::mean_accuracy(pts)) {
        std::cout << key.second << " ratio " << key.first << " acc " << acc << "\n";
      }
      return kExitOk;
    }

    if (*gain) {
      gain_opt.apply();
      gain_opt.cfg.seeds = gain_seeds;
      std::vector<SsbmParams> graphs;
      for (const auto& spec : gain_graphs) {
        const auto parts = split_list(spec);
        if (parts.size() != 4) throw ConfigError("--graph expects n,k,p,eta");
        SsbmParams p;
        p.n = std::stoul(parts[0]);
        p.k = std::stoul(parts[1]);
        p.p = std::stod(parts[2]);
        p.eta = std::stod(parts[3]);
        p.validate();
        graphs.push_back(p);
      }
      const std::vector<spectral::SpectralKind> kinds(spectral::kAllKinds.begin(), spectral::kAllKinds.end());
      const auto rows = harness::vsr_gain_study(graphs, kinds, gain_opt.cfg, &std::cerr);
      std::ofstream out(gain_out);
      harness::write_vsr_gain_csv(out, rows);
      std::cout << "wrote " << gain_out << " (" << rows.size() << " rows)\n";
      return kExitOk;
    }

    if (*exp) {
      const SignedGraph g = io::read_edge_list(fs::path(exp_in));
      const Labels labels = io::read_any_labels(fs::path(exp_labels), g.num_nodes());
      io::export_sorted_adjacency(g, labels, fs::path(exp_out));
      std::cout << "wrote " << exp_out << ".csv and " << exp_out << ".pgm\n";
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
