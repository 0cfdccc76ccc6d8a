#pragma once

#include "dsgc/cluster_head.hpp"
#include "dsgc/correlation.hpp"
#include "dsgc/eigen_solve.hpp"
#include "dsgc/encoder.hpp"
#include "dsgc/errors.hpp"
#include "dsgc/features.hpp"
#include "dsgc/kmeans.hpp"
#include "dsgc/metrics.hpp"
#include "dsgc/rewiring.hpp"
#include "dsgc/signed_graph.hpp"
#include "dsgc/sparse_matrix.hpp"
#include "dsgc/spectral.hpp"
#include "dsgc/ssbm.hpp"
#include "dsgc/io.hpp"
#include "dsgc/harness.hpp"
