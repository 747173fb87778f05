#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "graphmem/graph.hpp"

namespace graphmem {

/// A configuration sigma in {-1, +1}^n.
class SpinState {
 public:
  SpinState() = default;
  /// All spins +1.
  explicit SpinState(std::size_t n) : spins_(n, 1) {}
  /// Throws InvalidArgument if any entry is not +-1.
  explicit SpinState(std::vector<std::int8_t> spins);

  std::size_t size() const noexcept { return spins_.size(); }
  int operator[](std::size_t i) const noexcept { return spins_[i]; }
  void set(std::size_t i, int value) noexcept { spins_[i] = value >= 0 ? 1 : -1; }
  void flip(std::size_t i) noexcept { spins_[i] = static_cast<std::int8_t>(-spins_[i]); }
  SpinState negated() const;
  std::span<const std::int8_t> values() const noexcept { return spins_; }

  friend bool operator==(const SpinState&, const SpinState&) = default;

 private:
  std::vector<std::int8_t> spins_;
};

/**
 * M stored patterns of length n, bit-packed twice: row-major for pattern
 * access and column-major (one M-bit word string per vertex) so that the
 * Hebb coupling sum_mu xi_i^mu xi_j^mu is M - 2 popcount(col_i ^ col_j).
 * A set bit encodes -1.
 */
class PatternSet {
 public:
  PatternSet() = default;
  /// Throws InvalidArgument on an empty set or rows of unequal length.
  static PatternSet from_rows(std::span<const SpinState> rows);

  std::size_t count() const noexcept { return m_; }
  std::size_t length() const noexcept { return n_; }
  int spin(std::size_t mu, std::size_t i) const noexcept {
    return (rows_[mu * row_words_ + i / 64] >> (i % 64)) & 1U ? -1 : 1;
  }
  SpinState row(std::size_t mu) const;

  /// sum over patterns of xi_i^mu xi_j^mu.
  std::int32_t coupling(std::size_t i, std::size_t j) const noexcept;

  /// Stable 64-bit fingerprint of the contents.
  std::uint64_t fingerprint() const noexcept;

 private:
  void set_bit(std::size_t mu, std::size_t i);

  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::size_t row_words_ = 0;
  std::size_t col_words_ = 0;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint64_t> cols_;
};

/// i.i.d. fair +-1 entries; reproducible under seed.
PatternSet sample_patterns(std::size_t m_patterns, std::size_t n, std::uint64_t seed);

enum class CouplingMode {
  automatic,  ///< cached when M exceeds kCouplingCacheThreshold
  on_the_fly,
  cached,
};

inline constexpr std::size_t kCouplingCacheThreshold = 64;

/**
 * A graph together with the patterns stored on it. Borrows both: the graph
 * and pattern set must outlive the network. Couplings w_ij = a_ij sum_mu
 * xi_i^mu xi_j^mu are either recomputed per edge from the packed columns or
 * cached once per adjacency slot, never as an n x n matrix.
 */
class Network {
 public:
  /// Throws InvalidArgument on a length mismatch or when M * max degree
  /// does not fit in 31 bits.
  Network(const Graph& g, const PatternSet& p, CouplingMode mode = CouplingMode::automatic);

  const Graph& graph() const noexcept { return *graph_; }
  const PatternSet& patterns() const noexcept { return *patterns_; }
  std::size_t size() const noexcept { return graph_->num_vertices(); }
  bool cached() const noexcept { return !weights_.empty() || graph_->num_edges() == 0; }

  /// sum over neighbors j of sigma_j w_ij, computed exactly.
  std::int64_t local_field(const SpinState& s, VertexId i) const;

 private:
  const Graph* graph_;
  const PatternSet* patterns_;
  std::vector<std::int32_t> weights_;  // aligned with graph().adjacency()
};

/// Field at vertex i; throws InvalidArgument on dimension mismatch.
std::int64_t local_field(const Network& net, const SpinState& s, VertexId i);

/// Parallel dynamics T: every spin set to sgn(field) from the old state, sgn(0) = +1.
SpinState parallel_step(const Network& net, const SpinState& s);

/// Sequential dynamics S: spins updated in index order, each seeing the earlier updates.
SpinState sequential_sweep(const Network& net, const SpinState& s);

enum class UpdateMode { parallel, sequential };
enum class Terminal { fixed_point, two_cycle, step_cap };

std::string_view to_string(UpdateMode m);
std::string_view to_string(Terminal t);

struct DynamicsOutcome {
  Terminal terminal = Terminal::step_cap;
  /// Index k of `final` along the trajectory x_k = U^k(x_0).
  std::size_t steps = 0;
  SpinState final;
  /// Energy of x_0, x_1, ... (H^T for parallel, H^S for sequential) when recorded.
  std::vector<double> energy_trace;
};

/// Iterates the chosen update at most k_max times. Stops at the first fixed
/// point, or (parallel mode) the first 2-cycle, detected by comparing states.
DynamicsOutcome run_dynamics(const Network& net, const SpinState& start, UpdateMode mode, std::size_t k_max,
                             bool record_energy = false);

/// Integer sums behind the energies: -sum_i sigma_i h_i and -sum_i |h_i|.
std::int64_t energy_s_raw(const Network& net, const SpinState& s);
std::int64_t energy_t_raw(const Network& net, const SpinState& s);

/// H^S and H^T with the normalizing constant 1/n.
double energy_s(const Network& net, const SpinState& s);
double energy_t(const Network& net, const SpinState& s);

/// Number of disagreeing coordinates; throws InvalidArgument on length mismatch.
std::size_t hamming(const SpinState& a, const SpinState& b);

/// Integer part of rho * n, robust to rounding in the product.
std::size_t flip_count(double rho, std::size_t n);

/// Flips exactly flip_count(rho, n) distinct coordinates chosen uniformly.
SpinState corrupt(const SpinState& s, double rho, std::uint64_t seed);

/// Flips exactly the listed coordinates.
SpinState corrupt_set(const SpinState& s, std::span<const VertexId> flips);

/// min over i of xi_i^mu * h_i(xi^mu); positive iff xi^mu is a strict fixed point of T.
std::int64_t stability_margin(const Network& net, std::size_t mu);

}  // namespace graphmem
