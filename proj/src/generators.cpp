#include <algorithm>
#include <cmath>
#include <string>

#include "graphmem/errors.hpp"
#include "graphmem/graph.hpp"
#include "graphmem/random.hpp"

namespace graphmem {
namespace {

// Pairwise enumeration below this size, geometric skipping above.
constexpr std::size_t kDenseSamplingLimit = 10'000;

void check_size(std::size_t n) {
  if (n > std::numeric_limits<VertexId>::max()) throw InvalidArgument("n exceeds 32-bit vertex ids");
}

// Number of failures before the first success of a Bernoulli(p) sequence, 0 < p < 1.
std::uint64_t geometric_skip(Rng& rng, double log_q) {
  const double x = std::floor(std::log(uniform01_open_low(rng)) / log_q);
  return x >= 1.8e19 ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(x);
}

}  // namespace

Graph gen_complete(std::size_t n) {
  if (n < 2) throw InvalidArgument("gen_complete: n must be >= 2, got " + std::to_string(n));
  check_size(n);
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (VertexId i = 0; i < n; ++i) {
    for (VertexId j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return Graph::from_edges(n, edges);
}

Graph gen_erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("gen_erdos_renyi: p must lie in [0, 1]");
  check_size(n);
  std::vector<Edge> edges;
  if (n < 2 || p == 0.0) return Graph::from_edges(n, edges);
  if (p == 1.0) return gen_complete(n);

  Rng rng(seed);
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  edges.reserve(static_cast<std::size_t>(pairs * p * 1.05) + 16);
  if (n <= kDenseSamplingLimit) {
    for (VertexId i = 0; i < n; ++i) {
      for (VertexId j = i + 1; j < n; ++j) {
        if (uniform01(rng) < p) edges.emplace_back(i, j);
      }
    }
  } else {
    // Walk the pairs (v, w), w < v, in row order, jumping over geometric gaps.
    const double log_q = std::log1p(-p);
    std::uint64_t v = 1;
    std::uint64_t w = 0;
    bool first = true;
    while (v < n) {
      const std::uint64_t skip = geometric_skip(rng, log_q);
      std::uint64_t target = first ? skip : w + 1 + skip;
      first = false;
      while (v < n && target >= v) {
        target -= v;
        ++v;
      }
      if (v < n) {
        w = target;
        edges.emplace_back(static_cast<VertexId>(w), static_cast<VertexId>(v));
      }
    }
  }
  return Graph::from_edges(n, edges);
}

WeightSequence powerlaw_weights(std::size_t n, double beta, double d_avg, double m_bar) {
  if (!(beta > 2.0)) throw InvalidArgument("powerlaw_weights: beta must exceed 2");
  if (n < 2) throw InvalidArgument("powerlaw_weights: n must be >= 2");
  if (!(d_avg > 0.0 && d_avg < m_bar && m_bar < static_cast<double>(n))) {
    throw InvalidArgument("powerlaw_weights: need 0 < d_avg < m_bar < n");
  }
  const double nd = static_cast<double>(n);
  const double exponent = 1.0 / (beta - 1.0);
  const double c = (beta - 2.0) / (beta - 1.0) * d_avg * std::pow(nd, exponent);
  const double i0_real = nd * std::pow(d_avg * (beta - 2.0) / (m_bar * (beta - 1.0)), beta - 1.0);
  const auto i0 = static_cast<std::uint64_t>(std::max(1.0, std::round(i0_real)));

  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) w[k] = c * std::pow(static_cast<double>(i0 + k), -exponent);
  WeightSequence out = WeightSequence::from_weights(std::move(w));
  out.i0 = i0;
  out.c = c;
  out.beta = beta;
  return out;
}

Graph gen_chung_lu(const WeightSequence& ws, std::uint64_t seed) {
  const auto& w = ws.weights;
  const std::size_t n = w.size();
  check_size(n);
  if (!std::is_sorted(w.begin(), w.end(), std::greater<>())) {
    throw InvalidArgument("gen_chung_lu: weights must be non-increasing");
  }
  const double rho = ws.rho_norm;
  std::vector<Edge> edges;
  if (n < 2 || rho == 0.0) return Graph::from_edges(n, edges);
  edges.reserve(static_cast<std::size_t>(0.55 * ws.weight_sum()) + 16);
  Rng rng(seed);
  auto prob = [&](std::size_t i, std::size_t j) { return std::min(1.0, rho * w[i] * w[j]); };

  if (n <= kDenseSamplingLimit) {
    for (VertexId i = 0; i < n; ++i) {
      for (VertexId j = i + 1; j < n; ++j) {
        if (uniform01(rng) < prob(i, j)) edges.emplace_back(i, j);
      }
    }
  } else {
    // Skip with the (larger) probability of the current candidate, then thin by
    // the true probability at the landing point; valid because w is non-increasing.
    for (std::size_t u = 0; u + 1 < n; ++u) {
      std::size_t v = u + 1;
      double p = prob(u, v);
      while (v < n && p > 0.0) {
        if (p < 1.0) {
          const std::uint64_t skip = geometric_skip(rng, std::log1p(-p));
          if (skip >= n - v) break;
          v += skip;
        }
        const double q = prob(u, v);
        if (uniform01(rng) < q / p) edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
        p = q;
        ++v;
      }
    }
  }
  return Graph::from_edges(n, edges);
}

Graph gen_two_cliques(std::size_t m_small, std::size_t n, bool bridged) {
  if (m_small < 2 || n < 4 || m_small > n - 2) {
    throw InvalidArgument("gen_two_cliques: need 2 <= m_small <= n - 2");
  }
  check_size(n);
  std::vector<Edge> edges;
  auto clique = [&](VertexId first, VertexId last) {
    for (VertexId i = first; i < last; ++i) {
      for (VertexId j = i + 1; j < last; ++j) edges.emplace_back(i, j);
    }
  };
  clique(0, static_cast<VertexId>(m_small));
  clique(static_cast<VertexId>(m_small), static_cast<VertexId>(n));
  if (bridged) edges.emplace_back(static_cast<VertexId>(m_small - 1), static_cast<VertexId>(m_small));
  return Graph::from_edges(n, edges);
}

}  // namespace graphmem
