#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "graphmem/graph.hpp"
#include "graphmem/spectral.hpp"

namespace graphmem {

/// Natural-log binary entropy, with h(0) = h(1) = 0.
double entropy(double x);

/// Relative entropy a log(a/p) + (1-a) log((1-a)/(1-p)); a, p in (0, 1).
double rel_entropy(double a, double p);

/// Largest graph for which the +-1 assignments are enumerated exhaustively.
inline constexpr std::size_t kExhaustiveLimit = 16;

/// Tail of S = sum over edges {i, j} of X_i X_j, X i.i.d. fair signs, against
/// exp(-y^2 / (2 (l + lambda1 y))).
struct TailReport {
  std::vector<double> y_grid;
  std::vector<double> empirical;  ///< estimate of P[S > y]
  std::vector<double> ci_lo;      ///< Wilson interval at `z`; equals the estimate when exact
  std::vector<double> ci_hi;
  std::vector<double> analytic;
  std::size_t violations = 0;     ///< grid points where ci_lo exceeds the bound
  std::size_t samples = 0;        ///< 0 when exact
  bool exact = false;
  double z = 3.0;
};

/// Exhaustive for n <= kExhaustiveLimit, Monte-Carlo otherwise (samples >= 1000).
TailReport quadratic_form_tail(const Graph& g, const SpectralSummary& s, std::span<const double> y_grid,
                               std::size_t samples, std::uint64_t seed, unsigned workers = 1, double z = 3.0);

/// E[exp(t S)] against exp(l t^2 / (2 (1 - lambda1 t))) for 0 <= t < 1 / lambda1.
struct MgfReport {
  std::vector<double> t_grid;
  std::vector<double> empirical;
  std::vector<double> ci_lo;  ///< batch-means interval at `z`; equals the estimate when exact
  std::vector<double> ci_hi;
  std::vector<double> analytic;
  std::size_t violations = 0;
  std::size_t samples = 0;
  std::size_t batches = 0;
  bool exact = false;
  double z = 3.0;
};

inline constexpr std::size_t kMgfBatches = 100;

/// Throws InvalidArgument for t outside [0, 1 / lambda1).
MgfReport mgf_check(const Graph& g, const SpectralSummary& s, std::span<const double> t_grid, std::size_t samples,
                    std::uint64_t seed, unsigned workers = 1, double z = 3.0);

/// Extreme degrees of G(n, p) against the union bound n exp(-n H(a, p)).
struct DegreeTailReport {
  std::size_t n = 0;
  double p = 0.0;
  std::size_t trials = 0;
  double epsilon = 0.0;          ///< 2 sqrt(log n / (p n))
  bool epsilon_valid = true;     ///< false when epsilon >= 1
  double upper_threshold = 0.0;  ///< (1 + epsilon) p n
  double lower_threshold = 0.0;  ///< (1 - epsilon) p n
  std::size_t max_exceed = 0;    ///< draws with max degree >= upper_threshold
  std::size_t min_below = 0;     ///< draws with min degree <= lower_threshold
  double freq_max = 0.0;
  double freq_min = 0.0;
  double bound_max = 0.0;        ///< n exp(-n H((1+eps) p, p)), 0 when (1+eps) p >= 1
  double bound_min = 0.0;        ///< n exp(-n H((1-eps) p, p)), 0 when p = 1 or (1-eps) p <= 0
  std::size_t complement_checks = 0;     ///< draws on which delta(G) = n-1-m(complement) was verified
  std::size_t complement_mismatches = 0;
  std::size_t violations = 0;    ///< frequencies above bound + 3 sigma, plus complement mismatches
};

/// Throws InvalidArgument unless 0 < p <= 1, n >= 2 and trials >= 1.
DegreeTailReport degree_tail_experiment(std::size_t n, double p, std::size_t trials, std::uint64_t seed,
                                        std::size_t complement_checks = 0);

}  // namespace graphmem
