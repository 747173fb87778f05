#include "graphmem/hopfield.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "graphmem/errors.hpp"
#include "graphmem/random.hpp"

namespace graphmem {

SpinState::SpinState(std::vector<std::int8_t> spins) : spins_(std::move(spins)) {
  for (std::int8_t v : spins_) {
    if (v != 1 && v != -1) throw InvalidArgument("spin values must be +1 or -1");
  }
}

SpinState SpinState::negated() const {
  SpinState out = *this;
  for (auto& v : out.spins_) v = static_cast<std::int8_t>(-v);
  return out;
}

void PatternSet::set_bit(std::size_t mu, std::size_t i) {
  rows_[mu * row_words_ + i / 64] |= std::uint64_t{1} << (i % 64);
  cols_[i * col_words_ + mu / 64] |= std::uint64_t{1} << (mu % 64);
}

PatternSet PatternSet::from_rows(std::span<const SpinState> rows) {
  if (rows.empty()) throw InvalidArgument("pattern set needs at least one pattern");
  PatternSet p;
  p.m_ = rows.size();
  p.n_ = rows.front().size();
  if (p.n_ == 0) throw InvalidArgument("patterns must have positive length");
  p.row_words_ = (p.n_ + 63) / 64;
  p.col_words_ = (p.m_ + 63) / 64;
  p.rows_.assign(p.m_ * p.row_words_, 0);
  p.cols_.assign(p.n_ * p.col_words_, 0);
  for (std::size_t mu = 0; mu < p.m_; ++mu) {
    if (rows[mu].size() != p.n_) throw InvalidArgument("patterns must all have the same length");
    for (std::size_t i = 0; i < p.n_; ++i) {
      if (rows[mu][i] < 0) p.set_bit(mu, i);
    }
  }
  return p;
}

SpinState PatternSet::row(std::size_t mu) const {
  std::vector<std::int8_t> v(n_);
  for (std::size_t i = 0; i < n_; ++i) v[i] = static_cast<std::int8_t>(spin(mu, i));
  return SpinState(std::move(v));
}

std::int32_t PatternSet::coupling(std::size_t i, std::size_t j) const noexcept {
  const std::uint64_t* a = cols_.data() + i * col_words_;
  const std::uint64_t* b = cols_.data() + j * col_words_;
  int differ = 0;
  for (std::size_t w = 0; w < col_words_; ++w) differ += std::popcount(a[w] ^ b[w]);
  return static_cast<std::int32_t>(m_) - 2 * differ;
}

std::uint64_t PatternSet::fingerprint() const noexcept {
  std::uint64_t h = mix64(m_ * 0x100000001b3ULL + n_);
  for (std::uint64_t w : rows_) h = mix64(h ^ w);
  return h;
}

PatternSet sample_patterns(std::size_t m_patterns, std::size_t n, std::uint64_t seed) {
  if (m_patterns == 0 || n == 0) throw InvalidArgument("sample_patterns: need m_patterns >= 1 and n >= 1");
  Rng rng(seed);
  std::vector<SpinState> rows;
  rows.reserve(m_patterns);
  std::vector<std::int8_t> buf(n);
  for (std::size_t mu = 0; mu < m_patterns; ++mu) {
    for (std::size_t base = 0; base < n; base += 64) {
      const std::uint64_t word = rng();
      const std::size_t lim = std::min<std::size_t>(64, n - base);
      for (std::size_t b = 0; b < lim; ++b) buf[base + b] = (word >> b) & 1U ? -1 : 1;
    }
    rows.emplace_back(buf);
  }
  return PatternSet::from_rows(rows);
}

Network::Network(const Graph& g, const PatternSet& p, CouplingMode mode) : graph_(&g), patterns_(&p) {
  if (p.length() != g.num_vertices()) {
    throw InvalidArgument("network: pattern length " + std::to_string(p.length()) + " != vertex count " +
                          std::to_string(g.num_vertices()));
  }
  const DegreeStats d = degree_stats(g);
  if (static_cast<double>(p.count()) * d.m > static_cast<double>(std::numeric_limits<std::int32_t>::max())) {
    throw InvalidArgument("network: M * max degree exceeds 2^31");
  }
  const bool cache = mode == CouplingMode::cached ||
                     (mode == CouplingMode::automatic && p.count() > kCouplingCacheThreshold);
  if (cache) {
    weights_.resize(g.adjacency().size());
    for (VertexId i = 0; i < g.num_vertices(); ++i) {
      std::size_t slot = g.row_begin(i);
      for (VertexId j : g.neighbors(i)) weights_[slot++] = p.coupling(i, j);
    }
  }
}

std::int64_t Network::local_field(const SpinState& s, VertexId i) const {
  const auto nb = graph_->neighbors(i);
  std::int64_t acc = 0;
  if (!weights_.empty()) {
    const std::int32_t* w = weights_.data() + graph_->row_begin(i);
    for (std::size_t k = 0; k < nb.size(); ++k) acc += static_cast<std::int64_t>(s[nb[k]]) * w[k];
  } else {
    for (VertexId j : nb) acc += static_cast<std::int64_t>(s[j]) * patterns_->coupling(i, j);
  }
  return acc;
}

namespace {

void check_state(const Network& net, const SpinState& s) {
  if (s.size() != net.size()) {
    throw InvalidArgument("state length " + std::to_string(s.size()) + " != network size " +
                          std::to_string(net.size()));
  }
}

}  // namespace

std::int64_t local_field(const Network& net, const SpinState& s, VertexId i) {
  check_state(net, s);
  if (i >= net.size()) throw InvalidArgument("local_field: vertex out of range");
  return net.local_field(s, i);
}

SpinState parallel_step(const Network& net, const SpinState& s) {
  check_state(net, s);
  SpinState out(s.size());
  for (VertexId i = 0; i < s.size(); ++i) out.set(i, net.local_field(s, i) >= 0 ? 1 : -1);
  return out;
}

SpinState sequential_sweep(const Network& net, const SpinState& s) {
  check_state(net, s);
  SpinState out = s;
  for (VertexId i = 0; i < s.size(); ++i) out.set(i, net.local_field(out, i) >= 0 ? 1 : -1);
  return out;
}

std::string_view to_string(UpdateMode m) { return m == UpdateMode::parallel ? "parallel" : "sequential"; }

std::string_view to_string(Terminal t) {
  switch (t) {
    case Terminal::fixed_point:
      return "fixed_point";
    case Terminal::two_cycle:
      return "two_cycle";
    case Terminal::step_cap:
      return "step_cap";
  }
  return "unknown";
}

DynamicsOutcome run_dynamics(const Network& net, const SpinState& start, UpdateMode mode, std::size_t k_max,
                             bool record_energy) {
  check_state(net, start);
  if (k_max == 0) throw InvalidArgument("run_dynamics: k_max must be >= 1");
  const bool parallel = mode == UpdateMode::parallel;
  auto energy = [&](const SpinState& s) { return parallel ? energy_t(net, s) : energy_s(net, s); };

  DynamicsOutcome out;
  SpinState before_prev;  // x_{k-2}
  SpinState prev = start;  // x_{k-1}
  if (record_energy) out.energy_trace.push_back(energy(prev));
  for (std::size_t k = 1; k <= k_max; ++k) {
    SpinState next = parallel ? parallel_step(net, prev) : sequential_sweep(net, prev);
    if (next == prev) {
      out.terminal = Terminal::fixed_point;
      out.steps = k - 1;
      out.final = std::move(prev);
      return out;
    }
    if (record_energy) out.energy_trace.push_back(energy(next));
    if (parallel && k >= 2 && next == before_prev) {
      out.terminal = Terminal::two_cycle;
      out.steps = k - 1;
      out.final = std::move(prev);
      return out;
    }
    before_prev = std::move(prev);
    prev = std::move(next);
  }
  out.terminal = Terminal::step_cap;
  out.steps = k_max;
  out.final = std::move(prev);
  return out;
}

std::int64_t energy_s_raw(const Network& net, const SpinState& s) {
  check_state(net, s);
  std::int64_t acc = 0;
  for (VertexId i = 0; i < s.size(); ++i) acc += s[i] * net.local_field(s, i);
  return -acc;
}

std::int64_t energy_t_raw(const Network& net, const SpinState& s) {
  check_state(net, s);
  std::int64_t acc = 0;
  for (VertexId i = 0; i < s.size(); ++i) {
    const std::int64_t h = net.local_field(s, i);
    acc += h < 0 ? -h : h;
  }
  return -acc;
}

double energy_s(const Network& net, const SpinState& s) {
  return static_cast<double>(energy_s_raw(net, s)) / static_cast<double>(net.size());
}

double energy_t(const Network& net, const SpinState& s) {
  return static_cast<double>(energy_t_raw(net, s)) / static_cast<double>(net.size());
}

std::size_t hamming(const SpinState& a, const SpinState& b) {
  if (a.size() != b.size()) throw InvalidArgument("hamming: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += static_cast<std::size_t>(a[i] != b[i]);
  return d;
}

std::size_t flip_count(double rho, std::size_t n) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw InvalidArgument("corruption fraction must lie in [0, 1]");
  const double x = rho * static_cast<double>(n);
  // 0.29 * 100 evaluates to 28.999999999999996; the integer part intended is 29.
  const auto k = static_cast<std::size_t>(std::floor(x + 1e-9 * std::max(1.0, x)));
  return std::min(k, n);
}

SpinState corrupt(const SpinState& s, double rho, std::uint64_t seed) {
  const std::size_t n = s.size();
  const std::size_t k = flip_count(rho, n);
  SpinState out = s;
  if (k == 0) return out;
  if (k == n) return s.negated();
  // Partial Fisher-Yates over the index permutation.
  std::vector<VertexId> idx(n);
  std::iota(idx.begin(), idx.end(), VertexId{0});
  Rng rng(seed);
  for (std::size_t t = 0; t < k; ++t) {
    const std::size_t pick = t + uniform_below(rng, n - t);
    std::swap(idx[t], idx[pick]);
    out.flip(idx[t]);
  }
  return out;
}

SpinState corrupt_set(const SpinState& s, std::span<const VertexId> flips) {
  SpinState out = s;
  std::vector<char> seen(s.size(), 0);
  for (VertexId v : flips) {
    if (v >= s.size()) throw InvalidArgument("corrupt_set: vertex out of range");
    if (seen[v]) throw InvalidArgument("corrupt_set: duplicate vertex " + std::to_string(v));
    seen[v] = 1;
    out.flip(v);
  }
  return out;
}

std::int64_t stability_margin(const Network& net, std::size_t mu) {
  if (mu >= net.patterns().count()) throw InvalidArgument("stability_margin: pattern index out of range");
  const SpinState xi = net.patterns().row(mu);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (VertexId i = 0; i < xi.size(); ++i) best = std::min(best, xi[i] * net.local_field(xi, i));
  return best;
}

}  // namespace graphmem
