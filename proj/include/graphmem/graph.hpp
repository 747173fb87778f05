#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace graphmem {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

/**
 * Undirected simple graph in compressed sparse row form.
 *
 * Every edge {i, j} is stored twice, once in each endpoint's neighbor list,
 * and neighbor lists are sorted ascending. Graphs are immutable after
 * construction and safe to share between threads.
 */
class Graph {
 public:
  Graph() = default;

  /// Builds a graph on n vertices from an edge list in any order and orientation.
  /// Throws InvalidArgument on self-loops, duplicate edges or out-of-range endpoints.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t num_vertices() const noexcept { return degrees_.size(); }
  std::size_t num_edges() const noexcept { return neighbors_.size() / 2; }

  std::span<const VertexId> neighbors(VertexId v) const noexcept {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::uint32_t degree(VertexId v) const noexcept { return degrees_[v]; }
  std::span<const std::uint32_t> degrees() const noexcept { return degrees_; }

  /// First slot of v's neighbor list inside the flat adjacency array.
  std::size_t row_begin(VertexId v) const noexcept { return offsets_[v]; }
  std::span<const VertexId> adjacency() const noexcept { return neighbors_; }

  bool has_edge(VertexId a, VertexId b) const noexcept;

  /// Each edge once, as (i, j) with i < j, in lexicographic order.
  std::vector<Edge> edge_list() const;

  /// Checks symmetry, simplicity, sortedness and degree consistency.
  /// Returns an empty string when all invariants hold, else a description.
  std::string validate() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<VertexId> neighbors_;
  std::vector<std::uint32_t> degrees_;
};

struct DegreeStats {
  std::uint32_t delta = 0;  ///< minimum degree
  std::uint32_t m = 0;      ///< maximum degree
  double d_avg = 0.0;       ///< sum d_i / n
  double d_tilde = 0.0;     ///< sum d_i^2 / sum d_i, 0 for an edgeless graph
  std::size_t edge_count = 0;
};

DegreeStats degree_stats(const Graph& g);

/// Expected-degree sequence for the inhomogeneous (Chung-Lu) random graph.
struct WeightSequence {
  std::vector<double> weights;  ///< w_i for i = i0, ..., i0 + n - 1; non-increasing
  double rho_norm = 0.0;        ///< 1 / sum of weights
  std::uint64_t i0 = 1;
  double c = 0.0;
  double beta = 0.0;

  double expected_average_degree() const;
  double expected_max_degree() const { return weights.empty() ? 0.0 : weights.front(); }
  double second_order_average_degree() const;
  double weight_sum() const { return rho_norm > 0.0 ? 1.0 / rho_norm : 0.0; }

  /// Wraps an arbitrary weight vector (sorted non-increasing on return).
  /// Throws InvalidArgument for negative weights and InfeasibleWeights when
  /// max w^2 >= sum w.
  static WeightSequence from_weights(std::vector<double> w);
};

Graph gen_complete(std::size_t n);

Graph gen_erdos_renyi(std::size_t n, double p, std::uint64_t seed);

/// Power-law weights w_i = c i^{-1/(beta-1)} with
/// c = (beta-2)/(beta-1) * d * n^{1/(beta-1)} and
/// i0 = n (d (beta-2) / (m_bar (beta-1)))^{beta-1}, rounded to the nearest integer >= 1.
WeightSequence powerlaw_weights(std::size_t n, double beta, double d_avg, double m_bar);

/// Each pair {i, j}, i != j, independently with probability rho * w_i * w_j.
Graph gen_chung_lu(const WeightSequence& w, std::uint64_t seed);

/// K_{m_small} on vertices [0, m_small) and K_{n - m_small} on the rest; when
/// bridged, one extra edge between vertices m_small - 1 and m_small.
Graph gen_two_cliques(std::size_t m_small, std::size_t n, bool bridged);

Graph complement(const Graph& g);

/// Edge-list text format: "n <count>" on the first line, then "i j" per line, 0-based, i < j.
void save_edge_list(const Graph& g, const std::filesystem::path& path);
void write_edge_list(const Graph& g, std::ostream& out);
Graph load_edge_list(const std::filesystem::path& path);
Graph read_edge_list(std::istream& in);

}  // namespace graphmem
