#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "graphmem/graph.hpp"
#include "graphmem/hopfield.hpp"
#include "graphmem/spectral.hpp"

namespace graphmem {

// ---------------------------------------------------------------------------
// Theoretical predictors
// ---------------------------------------------------------------------------

/// Constants that the capacity theory leaves unspecified. All must be positive.
struct TheoryParams {
  double alpha = 0.05;   ///< prefactor of the capacity formula
  double c1 = 1.0;       ///< prefactor of the one-step error map f
  double c2 = 1.0;       ///< exponent constant of rho_0
  double c_steps = 1.0;  ///< contraction constant of the error sequences
  double c_iter = 10.0;  ///< safety factor of the default step budget
  std::optional<double> alpha_c;  ///< optional declared upper limit for alpha

  /// Throws InvalidArgument naming the offending field.
  void validate() const;
};

struct CapacityPrediction {
  double value = 0.0;  ///< alpha lambda1^2 / (m log n) - kappa lambda1 / m
  bool feasible = false;
};

CapacityPrediction theoretical_capacity(const SpectralSummary& s, const DegreeStats& d, std::size_t n,
                                        double alpha);

/// rho_0 = exp(-c2 lambda1 / (kappa + M m / lambda1)).
double rho_zero(const SpectralSummary& s, const DegreeStats& d, double m_patterns, double c2);

/// The five candidates of the one-step error bound f(rho), in order:
/// c1 rho (kappa/lambda1)^2, c1 rho h(rho), c1 (kappa/lambda1) h(rho),
/// c1 rho (M kappa / lambda1^2 log(1/rho))^{2/3}, rho_0.
struct FRhoResult {
  std::array<double, 5> branches{};
  std::size_t active = 0;
  double value = 0.0;
};

inline constexpr std::array<std::string_view, 5> kFRhoBranchNames{"spectral_ratio_sq", "entropy",
                                                                   "ratio_entropy", "pattern_load", "rho_zero"};

/// Throws InvalidArgument unless 0 < rho < 1/2.
FRhoResult f_rho(double rho, const SpectralSummary& s, const DegreeStats& d, double m_patterns,
                 const TheoryParams& params = {});

struct StepPrediction {
  std::size_t n0 = 0;       ///< iterations until all four sequences are below 1/n
  bool diverged = false;    ///< some sequence failed to decrease, or the iteration cap was hit
  std::array<std::size_t, 4> crossings{};  ///< per-sequence iteration count to drop below 1/n
  std::size_t monotonicity_checks = 0;     ///< strict decreases verified along the way
};

inline constexpr std::size_t kStepIterationCap = 10'000;

/**
 * Iterates, from the common start rho_start,
 *   w' = c w (kappa/lambda1)^2,   x' = c x h(x),
 *   y' = c (kappa/lambda1) h(y),  z' = c z (M kappa / lambda1^2 log(1/z))^{2/3}
 * until every sequence is below 1/n. A sequence stops being advanced once it
 * is below 1/n; each advance before that must strictly decrease it.
 *
 * Throws InvalidArgument unless rho_start is in (0, 1/e] and
 * lambda1 / kappa > ratio_factor * log(n).
 */
StepPrediction predict_steps(const SpectralSummary& s, double m_patterns, std::size_t n, double rho_start,
                             double c_steps = 1.0, double ratio_factor = 1.0);

/// ceil(c_iter * max(log log n, log n / max(log(lambda1 / (kappa log n)), 0.1))).
std::size_t default_step_budget(const SpectralSummary& s, std::size_t n, double c_iter = 10.0);

// ---------------------------------------------------------------------------
// Retrieval experiments
// ---------------------------------------------------------------------------

struct TrialResult {
  bool recovered = false;  ///< parallel dynamics reached xi^target exactly and stopped there
  std::size_t steps = 0;
  Terminal terminal = Terminal::step_cap;
  std::size_t target_mu = 0;
  double rho = 0.0;
  std::size_t final_distance = 0;  ///< Hamming distance to the target, diagnostics only
};

/// Corrupts xi^mu by exactly floor(rho n) uniform flips and runs parallel dynamics.
TrialResult basin_trial(const Network& net, std::size_t mu, double rho, std::size_t k_max, std::uint64_t seed);

/// Same, with a fixed set of flipped coordinates instead of a random one.
TrialResult basin_trial_flips(const Network& net, std::size_t mu, std::span<const VertexId> flips,
                              std::size_t k_max);

/// How each trial corrupts its target pattern.
struct Corruption {
  double rho = 0.0;
  std::vector<VertexId> fixed_flips;  ///< when nonempty, used instead of random flips
};

struct RateEstimate {
  std::size_t trials = 0;
  std::size_t successes = 0;
  double rate = 0.0;
  double ci_lo = 0.0;  ///< 95 % Wilson interval
  double ci_hi = 0.0;
  double mean_steps = 0.0;  ///< mean step count over recovered trials
};

/// Monte-Carlo success rate over `trials` uniformly drawn (mu, corruption) pairs.
/// Per-trial seeds derive from (seed, trial index) only, so the result does
/// not depend on `workers`.
RateEstimate recovery_rate(const Network& net, const Corruption& corruption, std::size_t k_max,
                           std::size_t trials, std::uint64_t seed, unsigned workers = 1);

struct CurvePoint {
  std::size_t m_patterns = 0;
  RateEstimate estimate;
};

struct SearchOptions {
  Corruption corruption;
  std::size_t k_max = 0;  ///< 0 selects default_step_budget
  std::size_t trials = 200;
  double threshold = 0.95;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::size_t trials_per_pattern_set = 10;  ///< fresh patterns are drawn every this many trials
  std::size_t max_m = 0;                    ///< 0 selects 4 n
};

struct CapacityEstimate {
  std::size_t m_hat = 0;
  double threshold = 0.0;
  std::size_t trials_per_m = 0;
  double rho = 0.0;
  std::size_t k_max = 0;
  std::vector<CurvePoint> curve;  ///< sorted by M
};

/// Success rate at M patterns, pooled over independent pattern draws.
/// Unlike capacity_search, needs an explicit opt.k_max.
RateEstimate rate_at(const Graph& g, std::size_t m_patterns, const SearchOptions& opt, std::size_t trials,
                     std::uint64_t stream);

/// Largest M whose recovery rate reaches the threshold: doubling until the
/// first failure, then bisection. An estimate whose 95 % interval straddles
/// the threshold is redone once with four times the trials.
CapacityEstimate capacity_search(const Graph& g, SearchOptions opt);

}  // namespace graphmem
