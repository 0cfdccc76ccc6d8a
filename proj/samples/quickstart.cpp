// Sample an SSBM graph, run DSGC and two spectral baselines, print scores.

#include "dsgc/dsgc.hpp"

#include <iostream>

int main(int argc, char** argv) {
  dsgc::SsbmParams params;
  params.n = argc > 1 ? std::stoul(argv[1]) : 1000;
  params.k = 5;
  params.p = 0.01;
  params.eta = 0.02;
  params.seed = 7;
  const dsgc::SignedGraph g = dsgc::generate_ssbm(params);
  const auto& truth = *g.labels();
  std::cout << "nodes " << g.num_nodes() << ", edges " << g.num_edges() << ", violation ratio "
            << dsgc::violation_ratio(g, truth) << "\n";

  const dsgc::harness::ExperimentConfig cfg;
  const auto out = dsgc::harness::run_dsgc(g, params.k, cfg, params.seed);
  std::cout << "dsgc        acc " << dsgc::metrics::accuracy(out.labels, truth) << " nmi "
            << dsgc::metrics::nmi(out.labels, truth) << "\n";

  for (auto kind : {dsgc::spectral::SpectralKind::Sponge, dsgc::spectral::SpectralKind::BNC}) {
    dsgc::spectral::SpectralMethod m;
    m.kind = kind;
    m.k = params.k;
    const auto labels = dsgc::spectral::spectral_cluster(g, m, params.seed);
    std::cout << dsgc::spectral::to_string(kind) << std::string(12 - dsgc::spectral::to_string(kind).size(), ' ')
              << "acc " << dsgc::metrics::accuracy(labels, truth) << " nmi " << dsgc::metrics::nmi(labels, truth)
              << "\n";
  }
}
