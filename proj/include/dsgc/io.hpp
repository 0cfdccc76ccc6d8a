#pragma once

#include "dsgc/cluster_head.hpp"
#include "dsgc/errors.hpp"
#include "dsgc/signed_graph.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace dsgc::io {

namespace detail {

inline std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "' for reading");
  return in;
}

inline std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  return out;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace detail

/// Edge list: `u v s` per line with 0-based ids and s in {+1,-1}; `#` starts a
/// comment. A `# nodes N` comment fixes the node count (otherwise max id + 1).
inline SignedGraph read_edge_list(std::istream& in, std::size_t min_nodes = 0) {
  std::vector<SignedEdge> edges;
  std::size_t n = min_nodes;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      std::istringstream directive(line.substr(hash + 1));
      std::string key;
      std::size_t count = 0;
      if (directive >> key >> count && key == "nodes") n = std::max(n, count);
      line.resize(hash);
    }
    if (detail::trim(line).empty()) continue;
    std::istringstream ls(line);
    long long u = 0;
    long long v = 0;
    long long s = 0;
    if (!(ls >> u >> v >> s) || u < 0 || v < 0 || (s != 1 && s != -1)) {
      throw ConfigError("edge list line " + std::to_string(lineno) + ": expected `u v s` with s = +1/-1");
    }
    std::string rest;
    if (ls >> rest) throw ConfigError("edge list line " + std::to_string(lineno) + ": trailing tokens");
    edges.push_back({static_cast<std::size_t>(u), static_cast<std::size_t>(v), static_cast<int>(s)});
    n = std::max({n, static_cast<std::size_t>(u) + 1, static_cast<std::size_t>(v) + 1});
  }
  return SignedGraph::from_edges(n, edges);
}

inline SignedGraph read_edge_list(const std::filesystem::path& path, std::size_t min_nodes = 0) {
  auto in = detail::open_in(path);
  return read_edge_list(in, min_nodes);
}

inline void write_edge_list(std::ostream& out, const SignedGraph& g) {
  out << "# nodes " << g.num_nodes() << "\n";
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << ' ' << (e.sign > 0 ? "1" : "-1") << "\n";
}

inline void write_edge_list(const std::filesystem::path& path, const SignedGraph& g) {
  auto out = detail::open_out(path);
  write_edge_list(out, g);
}

/// Label file: one `node cluster` pair per line; every node must appear.
inline Labels read_labels(std::istream& in, std::size_t n) {
  Labels labels(n, -1);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (detail::trim(line).empty()) continue;
    std::istringstream ls(line);
    long long node = 0;
    long long cluster = 0;
    if (!(ls >> node >> cluster) || node < 0 || cluster < 0 || static_cast<std::size_t>(node) >= n) {
      throw ConfigError("label file line " + std::to_string(lineno) + ": expected `node cluster`");
    }
    labels[static_cast<std::size_t>(node)] = static_cast<int>(cluster);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] < 0) throw ConfigError("label file has no entry for node " + std::to_string(i));
  }
  return labels;
}

inline Labels read_labels(const std::filesystem::path& path, std::size_t n) {
  auto in = detail::open_in(path);
  return read_labels(in, n);
}

inline void write_labels(const std::filesystem::path& path, const Labels& labels) {
  auto out = detail::open_out(path);
  for (std::size_t i = 0; i < labels.size(); ++i) out << i << ' ' << labels[i] << "\n";
}

struct TimeSeries {
  std::vector<std::string> names;
  DenseMatrix values;  // node x time
};

/// Header row of node names, then one row per time point with one column per node.
inline TimeSeries read_time_series_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("time-series CSV is empty");
  TimeSeries ts;
  ts.names = detail::split_csv(line);
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split_csv(line);
    if (cells.size() != ts.names.size()) {
      throw ConfigError("time-series CSV line " + std::to_string(lineno) + ": expected " +
                        std::to_string(ts.names.size()) + " columns");
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(c, &used));
        if (used != c.size()) throw std::invalid_argument(c);
      } catch (const std::exception&) {
        throw ConfigError("time-series CSV line " + std::to_string(lineno) + ": non-numeric cell '" + c + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  const auto nodes = static_cast<Eigen::Index>(ts.names.size());
  const auto times = static_cast<Eigen::Index>(rows.size());
  ts.values.resize(nodes, times);
  for (Eigen::Index t = 0; t < times; ++t) {
    for (Eigen::Index v = 0; v < nodes; ++v) ts.values(v, t) = rows[static_cast<std::size_t>(t)][static_cast<std::size_t>(v)];
  }
  return ts;
}

inline TimeSeries read_time_series_csv(const std::filesystem::path& path) {
  auto in = detail::open_in(path);
  return read_time_series_csv(in);
}

/// `node,cluster,prob_0..prob_{K-1}`.
inline void write_assignment_csv(std::ostream& out, const nn::AssignmentMatrix& a) {
  out << "node,cluster";
  for (Eigen::Index k = 0; k < a.pi.cols(); ++k) out << ",prob_" << k;
  out << "\n";
  for (Eigen::Index i = 0; i < a.pi.rows(); ++i) {
    out << i << ',' << a.hard[static_cast<std::size_t>(i)];
    for (Eigen::Index k = 0; k < a.pi.cols(); ++k) out << ',' << a.pi(i, k);
    out << "\n";
  }
}

inline void write_assignment_csv(const std::filesystem::path& path, const nn::AssignmentMatrix& a) {
  auto out = detail::open_out(path);
  write_assignment_csv(out, a);
}

/// Hard labels only, same header prefix as the assignment CSV.
inline void write_labels_csv(const std::filesystem::path& path, const Labels& labels) {
  auto out = detail::open_out(path);
  out << "node,cluster\n";
  for (std::size_t i = 0; i < labels.size(); ++i) out << i << ',' << labels[i] << "\n";
}

/// Reads the `node,cluster[,...]` CSV written by write_labels_csv or
/// write_assignment_csv; every node must appear.
inline Labels read_labels_csv(std::istream& in, std::size_t n) {
  std::string line;
  if (!std::getline(in, line) || detail::split_csv(line).size() < 2 || detail::split_csv(line)[0] != "node") {
    throw ConfigError("label CSV must start with a `node,cluster` header");
  }
  Labels labels(n, -1);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split_csv(line);
    try {
      const long long node = std::stoll(cells.at(0));
      const long long cluster = std::stoll(cells.at(1));
      if (node < 0 || cluster < 0 || static_cast<std::size_t>(node) >= n) throw std::out_of_range(line);
      labels[static_cast<std::size_t>(node)] = static_cast<int>(cluster);
    } catch (const std::exception&) {
      throw ConfigError("label CSV line " + std::to_string(lineno) + ": expected `node,cluster`");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] < 0) throw ConfigError("label CSV has no entry for node " + std::to_string(i));
  }
  return labels;
}

inline Labels read_labels_csv(const std::filesystem::path& path, std::size_t n) {
  auto in = detail::open_in(path);
  return read_labels_csv(in, n);
}

/// Either label format, chosen by a `node,` header on the first line.
inline Labels read_any_labels(const std::filesystem::path& path, std::size_t n) {
  std::string first;
  {
    auto in = detail::open_in(path);
    std::getline(in, first);
  }
  return first.rfind("node,", 0) == 0 ? read_labels_csv(path, n) : read_labels(path, n);
}

inline void write_loss_history_csv(const std::filesystem::path& path, const std::vector<nn::LossBreakdown>& h) {
  auto out = detail::open_out(path);
  out << "epoch,loss,cut,regularizer\n";
  for (std::size_t e = 0; e < h.size(); ++e) {
    out << e + 1 << ',' << h[e].total << ',' << h[e].cut << ',' << h[e].regularizer << "\n";
  }
}

/// One row per node, one column per embedding dimension.
inline void write_matrix_csv(std::ostream& out, const DenseMatrix& m, const std::string& prefix = "z") {
  for (Eigen::Index c = 0; c < m.cols(); ++c) out << (c ? "," : "") << prefix << c;
  out << "\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << (c ? "," : "") << m(r, c);
    out << "\n";
  }
}

inline void write_matrix_csv(const std::filesystem::path& path, const DenseMatrix& m, const std::string& prefix = "z") {
  auto out = detail::open_out(path);
  write_matrix_csv(out, m, prefix);
}

/// Node order by cluster id, stable within a cluster.
inline std::vector<std::size_t> cluster_order(const Labels& labels) {
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
  return order;
}

/// Signed adjacency with rows and columns permuted by cluster membership;
/// entry (r,c) is A[order[r], order[c]] in {-1,0,+1}.
inline std::vector<std::vector<int>> sorted_adjacency_grid(const SignedGraph& g, const Labels& labels) {
  if (labels.size() != g.num_nodes()) throw ConfigError("labels must cover every node");
  const auto order = cluster_order(labels);
  std::vector<std::size_t> position(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) position[order[r]] = r;
  std::vector<std::vector<int>> grid(order.size(), std::vector<int>(order.size(), 0));
  for (const auto& e : g.adjacency().entries()) {
    grid[position[e.row]][position[e.col]] = e.value > 0.0 ? 1 : -1;
  }
  return grid;
}

/// Writes `<stem>.csv` (values -1/0/1) and `<stem>.pgm` (binary graymap:
/// +1 white, 0 mid grey, -1 black).
inline void export_sorted_adjacency(const SignedGraph& g, const Labels& labels, const std::filesystem::path& stem) {
  const auto grid = sorted_adjacency_grid(g, labels);
  {
    auto csv = detail::open_out(std::filesystem::path(stem.string() + ".csv"));
    for (const auto& row : grid) {
      for (std::size_t c = 0; c < row.size(); ++c) csv << (c ? "," : "") << row[c];
      csv << "\n";
    }
  }
  const auto pgm_path = std::filesystem::path(stem.string() + ".pgm");
  if (pgm_path.has_parent_path()) std::filesystem::create_directories(pgm_path.parent_path());
  std::ofstream pgm(pgm_path, std::ios::binary);
  if (!pgm) throw std::runtime_error("cannot open '" + pgm_path.string() + "' for writing");
  pgm << "P5\n" << grid.size() << ' ' << grid.size() << "\n255\n";
  for (const auto& row : grid) {
    for (int v : row) pgm.put(static_cast<char>(v > 0 ? 255 : (v < 0 ? 0 : 128)));
  }
}

}  // namespace dsgc::io
