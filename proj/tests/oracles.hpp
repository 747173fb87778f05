// Independent reference implementations used as test oracles. Nothing here
// calls into the library beyond reading a Graph's public accessors.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "graphmem/graph.hpp"
#include "graphmem/hopfield.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

inline Matrix dense_adjacency(const graphmem::Graph& g) {
  const std::size_t n = g.num_vertices();
  Matrix a(n, std::vector<double>(n, 0.0));
  for (graphmem::VertexId i = 0; i < n; ++i) {
    for (graphmem::VertexId j : g.neighbors(i)) a[i][j] = 1.0;
  }
  return a;
}

// Cyclic Jacobi rotations; eigenvalues sorted descending.
inline std::vector<double> jacobi_eigenvalues(Matrix a, double tol = 1e-13) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        scale += a[i][j] * a[i][j];
        if (i != j) off += a[i][j] * a[i][j];
      }
    }
    if (off <= tol * tol * std::max(scale, 1.0)) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

// Symmetry, simplicity and degree consistency, checked against has_edge from both sides.
inline std::string check_graph(const graphmem::Graph& g) {
  const std::size_t n = g.num_vertices();
  std::size_t twice_edges = 0;
  for (graphmem::VertexId i = 0; i < n; ++i) {
    const auto nb = g.neighbors(i);
    if (nb.size() != g.degree(i)) return "degree mismatch at " + std::to_string(i);
    twice_edges += nb.size();
    for (std::size_t k = 0; k < nb.size(); ++k) {
      const graphmem::VertexId j = nb[k];
      if (j >= n) return "neighbor out of range";
      if (j == i) return "self-loop at " + std::to_string(i);
      if (k > 0 && nb[k - 1] >= j) return "unsorted or duplicate neighbors at " + std::to_string(i);
      const auto back = g.neighbors(j);
      if (std::find(back.begin(), back.end(), i) == back.end()) return "asymmetric edge";
    }
  }
  if (twice_edges != 2 * g.num_edges()) return "edge count mismatch";
  return "";
}

inline std::vector<std::vector<int>> rows_of(const graphmem::PatternSet& p) {
  std::vector<std::vector<int>> rows(p.count(), std::vector<int>(p.length()));
  for (std::size_t mu = 0; mu < p.count(); ++mu) {
    for (std::size_t i = 0; i < p.length(); ++i) rows[mu][i] = p.spin(mu, i);
  }
  return rows;
}

// sum_j a_ij s_j sum_mu xi_i xi_j by the triple loop.
inline long long field(const Matrix& a, const std::vector<std::vector<int>>& xi, const graphmem::SpinState& s,
                       std::size_t i) {
  long long h = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[i][j] == 0.0) continue;
    long long w = 0;
    for (const auto& row : xi) w += row[i] * row[j];
    h += w * s[j];
  }
  return h;
}

inline graphmem::SpinState parallel_step(const Matrix& a, const std::vector<std::vector<int>>& xi,
                                         const graphmem::SpinState& s) {
  graphmem::SpinState out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out.set(i, field(a, xi, s, i) >= 0 ? 1 : -1);
  return out;
}

inline graphmem::SpinState sequential_sweep(const Matrix& a, const std::vector<std::vector<int>>& xi,
                                            graphmem::SpinState s) {
  for (std::size_t i = 0; i < s.size(); ++i) s.set(i, field(a, xi, s, i) >= 0 ? 1 : -1);
  return s;
}

// S = sum over edges of x_i x_j for every assignment; bit v of the mask set means x_v = -1.
inline std::vector<long long> enumerate_quadratic_form(const graphmem::Graph& g) {
  const auto edges = g.edge_list();
  const std::size_t n = g.num_vertices();
  std::vector<long long> values(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < values.size(); ++mask) {
    long long s = 0;
    for (const auto& [i, j] : edges) {
      const int xi = (mask >> i) & 1U ? -1 : 1;
      const int xj = (mask >> j) & 1U ? -1 : 1;
      s += xi * xj;
    }
    values[mask] = s;
  }
  return values;
}

inline double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log(x) - (1.0 - x) * std::log(1.0 - x);
}

}  // namespace oracle
