#include "graphmem/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "graphmem/errors.hpp"

namespace graphmem {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  if (n > std::numeric_limits<VertexId>::max()) throw InvalidArgument("vertex count exceeds 32-bit ids");
  Graph g;
  g.degrees_.assign(n, 0);
  for (const auto& [a, b] : edges) {
    if (a >= n || b >= n) {
      throw InvalidArgument("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                            ") out of range for n = " + std::to_string(n));
    }
    if (a == b) throw InvalidArgument("self-loop at vertex " + std::to_string(a));
    ++g.degrees_[a];
    ++g.degrees_[b];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + g.degrees_[v];
  g.neighbors_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [a, b] : edges) {
    g.neighbors_[cursor[a]++] = b;
    g.neighbors_[cursor[b]++] = a;
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto first = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    if (auto dup = std::adjacent_find(first, last); dup != last) {
      throw InvalidArgument("duplicate edge (" + std::to_string(std::min<std::size_t>(v, *dup)) + ", " +
                            std::to_string(std::max<std::size_t>(v, *dup)) + ")");
    }
  }
  return g;
}

bool Graph::has_edge(VertexId a, VertexId b) const noexcept {
  if (a >= num_vertices() || b >= num_vertices()) return false;
  const auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<Edge> Graph::edge_list() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (VertexId v = 0; v < num_vertices(); ++v) {
    for (VertexId u : neighbors(v)) {
      if (v < u) out.emplace_back(v, u);
    }
  }
  return out;
}

std::string Graph::validate() const {
  std::ostringstream err;
  const std::size_t n = num_vertices();
  if (offsets_.size() != n + 1 || offsets_.front() != 0 || offsets_.back() != neighbors_.size()) {
    err << "offset array inconsistent with adjacency";
    return err.str();
  }
  if (neighbors_.size() % 2 != 0) return "odd number of adjacency entries";
  for (VertexId v = 0; v < n; ++v) {
    const auto nb = neighbors(v);
    if (nb.size() != degrees_[v]) {
      err << "degree mismatch at vertex " << v;
      return err.str();
    }
    for (std::size_t k = 0; k < nb.size(); ++k) {
      const VertexId u = nb[k];
      if (u >= n) {
        err << "neighbor " << u << " of vertex " << v << " out of range";
        return err.str();
      }
      if (u == v) {
        err << "self-loop at vertex " << v;
        return err.str();
      }
      if (k > 0 && nb[k - 1] >= u) {
        err << "neighbors of vertex " << v << " not strictly increasing";
        return err.str();
      }
      if (!has_edge(u, v)) {
        err << "edge (" << v << ", " << u << ") missing reverse direction";
        return err.str();
      }
    }
  }
  return {};
}

DegreeStats degree_stats(const Graph& g) {
  DegreeStats s;
  const auto deg = g.degrees();
  s.edge_count = g.num_edges();
  if (deg.empty()) return s;
  const auto [lo, hi] = std::minmax_element(deg.begin(), deg.end());
  s.delta = *lo;
  s.m = *hi;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint32_t d : deg) {
    sum += d;
    sum_sq += static_cast<double>(d) * d;
  }
  s.d_avg = sum / static_cast<double>(deg.size());
  s.d_tilde = sum > 0.0 ? sum_sq / sum : 0.0;
  return s;
}

double WeightSequence::expected_average_degree() const {
  return weights.empty() ? 0.0 : weight_sum() / static_cast<double>(weights.size());
}

double WeightSequence::second_order_average_degree() const {
  double sq = 0.0;
  for (double w : weights) sq += w * w;
  return sq * rho_norm;
}

WeightSequence WeightSequence::from_weights(std::vector<double> w) {
  WeightSequence out;
  double sum = 0.0;
  for (double x : w) {
    if (!(x >= 0.0)) throw InvalidArgument("weights must be non-negative");
    sum += x;
  }
  std::sort(w.begin(), w.end(), std::greater<>());
  if (!w.empty() && sum > 0.0 && w.front() * w.front() >= sum) {
    throw InfeasibleWeights("max w_i^2 = " + std::to_string(w.front() * w.front()) +
                            " >= sum w_k = " + std::to_string(sum));
  }
  out.weights = std::move(w);
  out.rho_norm = sum > 0.0 ? 1.0 / sum : 0.0;
  return out;
}

Graph complement(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<Edge> edges;
  edges.reserve(n * (n - (n > 0 ? 1 : 0)) / 2 - g.num_edges());
  for (VertexId i = 0; i < n; ++i) {
    const auto nb = g.neighbors(i);
    auto it = std::upper_bound(nb.begin(), nb.end(), i);
    for (VertexId j = i + 1; j < n; ++j) {
      if (it != nb.end() && *it == j) {
        ++it;
        continue;
      }
      edges.emplace_back(i, j);
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace graphmem
