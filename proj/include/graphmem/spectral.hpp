#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "graphmem/graph.hpp"

namespace graphmem {

enum class SpectralMethod { automatic, dense, iterative };

std::string_view to_string(SpectralMethod m);

/// Extreme eigenvalues of the adjacency matrix.
struct SpectralSummary {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambdaN = 0.0;
  double kappa = 0.0;  ///< max(|lambda2|, |lambdaN|)
  double gap = 0.0;    ///< lambda1 - kappa
  SpectralMethod method = SpectralMethod::dense;
  double residual = 0.0;  ///< largest eigen-residual norm ||A v - theta v|| over the three estimates
  std::size_t matvecs = 0;

  /// Fills kappa and gap from the three eigenvalues.
  void finish();
};

/// Largest size solved by dense symmetric eigendecomposition under `automatic`.
inline constexpr std::size_t kDenseSpectrumLimit = 4096;
inline constexpr double kDefaultSpectralTol = 1e-8;
inline constexpr std::size_t kDefaultMatvecCap = 100'000;

/// lambda1, lambda2, lambdaN with |error| <= tol * max(1, |lambda1|).
/// The dense path is exact up to rounding. The iterative path runs power
/// iteration for lambda1, shifted power iteration on lambda1 I - A for lambdaN,
/// and power iteration on the v1-deflated A - lambdaN I for lambda2; each stops
/// once its residual is below the tolerance and throws SolverFailure after
/// `matvec_cap` products.
SpectralSummary spectrum_summary(const Graph& g, double tol = kDefaultSpectralTol,
                                 SpectralMethod method = SpectralMethod::automatic,
                                 std::size_t matvec_cap = kDefaultMatvecCap);

/// Largest adjacency eigenvalue of g (the Perron root).
double largest_eigenvalue(const Graph& g, double tol = kDefaultSpectralTol);

struct ConditionReport {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  ///< lhs - rhs
  double constant_used = 0.0;
};

/// Regularity condition: delta > c1 * lambda1, c1 in (0, 1).
ConditionReport check_h1(const SpectralSummary& s, const DegreeStats& d, double c1);

/// Expansion condition: lambda1 >= c * log(n) * kappa. The constant has no
/// canonical value; callers choose it.
ConditionReport check_h2(const SpectralSummary& s, std::size_t n, double c);

/// Edge count and eigenvalue bounds for the edges running from J to I.
struct BoundReport {
  std::size_t edges_j_to_i = 0;  ///< ordered pairs (j in J, k in I) joined by an edge
  double edge_bound = 0.0;       ///< [rho rho' lambda1 + sqrt(rho rho') kappa] n
  double lambda_h = 0.0;         ///< largest eigenvalue of the J-I edge subgraph
  double lambda_bound = 0.0;     ///< 2 [sqrt(rho rho') lambda1 + (1 - sqrt(rho rho')) kappa]
  double rho_i = 0.0;            ///< |I| / n
  double rho_j = 0.0;            ///< |J| / n
  bool edge_ok = false;
  bool lambda_ok = false;
};

/// Both flags are expected to hold for every graph and every nonempty I, J.
/// Throws InvalidArgument for empty or out-of-range vertex sets.
BoundReport subgraph_bounds(const Graph& g, const SpectralSummary& s, std::span<const VertexId> I,
                            std::span<const VertexId> J);

/// Simple graph on g's vertices whose edges are {j, k} with j in J, k in I and {j, k} in g.
Graph cross_subgraph(const Graph& g, std::span<const VertexId> I, std::span<const VertexId> J);

}  // namespace graphmem
