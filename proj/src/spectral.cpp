#include "graphmem/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "graphmem/errors.hpp"
#include "graphmem/random.hpp"

namespace graphmem {
namespace {

using Vec = std::vector<double>;

void multiply(const Graph& g, const Vec& x, Vec& y) {
  const std::size_t n = g.num_vertices();
  for (VertexId v = 0; v < n; ++v) {
    double acc = 0.0;
    for (VertexId u : g.neighbors(v)) acc += x[u];
    y[v] = acc;
  }
}

double dot(const Vec& a, const Vec& b) { return std::inner_product(a.begin(), a.end(), b.begin(), 0.0); }

double normalize(Vec& x) {
  const double nrm = std::sqrt(dot(x, x));
  if (nrm > 0.0) {
    for (double& v : x) v /= nrm;
  }
  return nrm;
}

void project_out(Vec& x, const Vec* basis) {
  if (basis == nullptr) return;
  const double c = dot(x, *basis);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * (*basis)[i];
}

Vec scrambled_start(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Vec x(n);
  for (double& v : x) v = 2.0 * uniform01(rng) - 1.0;
  return x;
}

struct PowerResult {
  double value = 0.0;
  Vec vector;
  double residual = 0.0;
  std::size_t matvecs = 0;
};

// Power iteration on  sign * A + shift * I, restricted to the complement of `deflate`.
// Reports the Rayleigh quotient of A itself and the residual ||A x - theta x||.
PowerResult power_method(const Graph& g, Vec x, double sign, double shift, const Vec* deflate,
                         double tol_abs, std::size_t cap, const char* what) {
  const std::size_t n = g.num_vertices();
  Vec ax(n);
  project_out(x, deflate);
  normalize(x);
  PowerResult out;
  for (std::size_t it = 0; it < cap; ++it) {
    multiply(g, x, ax);
    ++out.matvecs;
    const double theta = dot(x, ax);
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = ax[i] - theta * x[i];
      r2 += r * r;
    }
    out.value = theta;
    out.residual = std::sqrt(r2);
    if (out.residual <= tol_abs) {
      out.vector = std::move(x);
      return out;
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = sign * ax[i] + shift * x[i];
    project_out(x, deflate);
    if (normalize(x) == 0.0) {
      throw SolverFailure(std::string(what) + ": iterate collapsed to zero", out.residual);
    }
  }
  throw SolverFailure(std::string(what) + ": no convergence within " + std::to_string(cap) + " matvecs",
                      out.residual);
}

SpectralSummary dense_summary(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    for (VertexId u : g.neighbors(v)) a(v, u) = 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();  // ascending
  SpectralSummary s;
  s.method = SpectralMethod::dense;
  s.lambda1 = ev(n - 1);
  s.lambda2 = n >= 2 ? ev(n - 2) : ev(n - 1);
  s.lambdaN = ev(0);
  s.residual = 0.0;
  s.finish();
  return s;
}

SpectralSummary iterative_summary(const Graph& g, double tol, std::size_t cap) {
  const std::size_t n = g.num_vertices();
  const DegreeStats deg = degree_stats(g);
  SpectralSummary s;
  s.method = SpectralMethod::iterative;
  // The Perron root is at least d_avg, so the scale of the tolerance is known up front.
  double scale = std::max(1.0, static_cast<double>(deg.m));
  double tol_abs = tol * std::max(1.0, deg.d_avg);

  Vec ones(n, 1.0);
  const PowerResult top = power_method(g, ones, 1.0, std::max(1.0, 0.5 * deg.d_avg), nullptr, tol_abs, cap,
                                       "lambda1");
  s.lambda1 = top.value;
  scale = std::max(1.0, std::abs(top.value));
  tol_abs = tol * scale;

  const PowerResult bottom = power_method(g, scrambled_start(n, 0x1a3b5c7d9e0f2413ULL), -1.0, s.lambda1 + 1.0,
                                          &top.vector, tol_abs, cap, "lambdaN");
  s.lambdaN = bottom.value;

  if (n >= 2) {
    const PowerResult second = power_method(g, scrambled_start(n, 0x2468ace013579bdfULL), 1.0,
                                            1.0 - s.lambdaN, &top.vector, tol_abs, cap, "lambda2");
    s.lambda2 = second.value;
    s.residual = std::max({top.residual, bottom.residual, second.residual});
    s.matvecs = top.matvecs + bottom.matvecs + second.matvecs;
  } else {
    s.lambda2 = s.lambda1;
    s.residual = std::max(top.residual, bottom.residual);
    s.matvecs = top.matvecs + bottom.matvecs;
  }
  s.finish();
  return s;
}

}  // namespace

std::string_view to_string(SpectralMethod m) {
  switch (m) {
    case SpectralMethod::automatic:
      return "automatic";
    case SpectralMethod::dense:
      return "dense";
    case SpectralMethod::iterative:
      return "iterative";
  }
  return "unknown";
}

void SpectralSummary::finish() {
  kappa = std::max(std::abs(lambda2), std::abs(lambdaN));
  gap = lambda1 - kappa;
}

SpectralSummary spectrum_summary(const Graph& g, double tol, SpectralMethod method, std::size_t matvec_cap) {
  const std::size_t n = g.num_vertices();
  if (n == 0) throw InvalidArgument("spectrum_summary: graph has no vertices");
  if (!(tol > 0.0)) throw InvalidArgument("spectrum_summary: tol must be positive");
  if (method == SpectralMethod::automatic) {
    method = n <= kDenseSpectrumLimit ? SpectralMethod::dense : SpectralMethod::iterative;
  }
  if (g.num_edges() == 0) {
    SpectralSummary s;
    s.method = method;
    s.finish();
    return s;
  }
  return method == SpectralMethod::dense ? dense_summary(g) : iterative_summary(g, tol, matvec_cap);
}

double largest_eigenvalue(const Graph& g, double tol) {
  if (g.num_edges() == 0) return 0.0;
  const DegreeStats deg = degree_stats(g);
  try {
    // Iterates stay positive, so the Rayleigh quotient tracks the Perron root.
    const PowerResult r = power_method(g, Vec(g.num_vertices(), 1.0), 1.0, std::max(1.0, 0.5 * deg.d_avg),
                                       nullptr, tol * std::max(1.0, deg.d_avg), kDefaultMatvecCap, "lambda1");
    return r.value;
  } catch (const SolverFailure&) {
    return dense_summary(g).lambda1;
  }
}

ConditionReport check_h1(const SpectralSummary& s, const DegreeStats& d, double c1) {
  if (!(c1 > 0.0 && c1 < 1.0)) throw InvalidArgument("check_h1: c1 must lie in (0, 1)");
  ConditionReport r;
  r.constant_used = c1;
  r.lhs = d.delta;
  r.rhs = c1 * s.lambda1;
  r.margin = r.lhs - r.rhs;
  r.holds = r.margin > 0.0;
  return r;
}

ConditionReport check_h2(const SpectralSummary& s, std::size_t n, double c) {
  if (!(c > 0.0)) throw InvalidArgument("check_h2: c must be positive");
  if (n < 2) throw InvalidArgument("check_h2: n must be >= 2");
  ConditionReport r;
  r.constant_used = c;
  r.lhs = s.lambda1;
  r.rhs = c * std::log(static_cast<double>(n)) * s.kappa;
  r.margin = r.lhs - r.rhs;
  r.holds = r.margin >= 0.0;
  return r;
}

namespace {

std::vector<char> membership(std::size_t n, std::span<const VertexId> set, const char* name) {
  if (set.empty()) throw InvalidArgument(std::string("subgraph_bounds: vertex set ") + name + " is empty");
  std::vector<char> in(n, 0);
  for (VertexId v : set) {
    if (v >= n) throw InvalidArgument(std::string("subgraph_bounds: vertex out of range in ") + name);
    in[v] = 1;
  }
  return in;
}

}  // namespace

Graph cross_subgraph(const Graph& g, std::span<const VertexId> I, std::span<const VertexId> J) {
  const std::size_t n = g.num_vertices();
  const auto in_i = membership(n, I, "I");
  const auto in_j = membership(n, J, "J");
  std::vector<Edge> edges;
  for (VertexId a = 0; a < n; ++a) {
    for (VertexId b : g.neighbors(a)) {
      if (a < b && ((in_j[a] && in_i[b]) || (in_i[a] && in_j[b]))) edges.emplace_back(a, b);
    }
  }
  return Graph::from_edges(n, edges);
}

BoundReport subgraph_bounds(const Graph& g, const SpectralSummary& s, std::span<const VertexId> I,
                            std::span<const VertexId> J) {
  const std::size_t n = g.num_vertices();
  const auto in_i = membership(n, I, "I");
  const auto in_j = membership(n, J, "J");
  const auto size_i = static_cast<double>(std::count(in_i.begin(), in_i.end(), 1));
  const auto size_j = static_cast<double>(std::count(in_j.begin(), in_j.end(), 1));

  BoundReport r;
  for (VertexId j = 0; j < n; ++j) {
    if (!in_j[j]) continue;
    for (VertexId k : g.neighbors(j)) r.edges_j_to_i += static_cast<std::size_t>(in_i[k]);
  }
  const double nd = static_cast<double>(n);
  r.rho_i = size_i / nd;
  r.rho_j = size_j / nd;
  const double prod = r.rho_i * r.rho_j;
  const double root = std::sqrt(prod);
  r.edge_bound = (prod * s.lambda1 + root * s.kappa) * nd;
  r.lambda_bound = 2.0 * (root * s.lambda1 + (1.0 - root) * s.kappa);
  r.lambda_h = largest_eigenvalue(cross_subgraph(g, I, J), 1e-10);

  // Slack for the rounding in the spectral inputs.
  const double slack = 1e-9 * std::max(1.0, s.lambda1);
  r.edge_ok = static_cast<double>(r.edges_j_to_i) <= r.edge_bound + slack * nd;
  r.lambda_ok = r.lambda_h <= r.lambda_bound + slack;
  return r;
}

}  // namespace graphmem
