#include "graphmem/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "graphmem/errors.hpp"
#include "graphmem/parallel.hpp"
#include "graphmem/random.hpp"
#include "graphmem/stats.hpp"

namespace graphmem {

double entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument("entropy: argument must lie in [0, 1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log(x) - (1.0 - x) * std::log1p(-x);
}

double rel_entropy(double a, double p) {
  if (!(a > 0.0 && a < 1.0) || !(p > 0.0 && p < 1.0)) {
    throw InvalidArgument("rel_entropy: arguments must lie in (0, 1)");
  }
  return a * std::log(a / p) + (1.0 - a) * std::log((1.0 - a) / (1.0 - p));
}

namespace {

// S for one assignment: edges with equal signs contribute +1, others -1.
class QuadraticForm {
 public:
  explicit QuadraticForm(const Graph& g) : n_(g.num_vertices()), edges_(g.edge_list()) {}

  std::size_t vertices() const { return n_; }
  std::size_t edges() const { return edges_.size(); }

  // Bit v of `bits` (word v / 64) is the sign of X_v.
  long long value(const std::vector<std::uint64_t>& bits) const {
    long long disagree = 0;
    for (const auto& [a, b] : edges_) {
      disagree += static_cast<long long>(((bits[a / 64] >> (a % 64)) ^ (bits[b / 64] >> (b % 64))) & 1U);
    }
    return static_cast<long long>(edges_.size()) - 2 * disagree;
  }

  void draw(Rng& rng, std::vector<std::uint64_t>& bits) const {
    bits.resize((n_ + 63) / 64);
    for (auto& w : bits) w = rng();
  }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
};

double tail_bound(double y, double l, double lambda1) {
  if (!(y > 0.0)) return 1.0;
  return std::exp(-y * y / (2.0 * (l + lambda1 * y)));
}

double mgf_bound(double t, double l, double lambda1) { return std::exp(l * t * t / (2.0 * (1.0 - lambda1 * t))); }

// Relative slack for comparisons against exactly enumerated values.
constexpr double kExactSlack = 1e-12;

}  // namespace

TailReport quadratic_form_tail(const Graph& g, const SpectralSummary& s, std::span<const double> y_grid,
                               std::size_t samples, std::uint64_t seed, unsigned workers, double z) {
  const QuadraticForm form(g);
  const std::size_t n = form.vertices();
  const double l = static_cast<double>(form.edges());
  const std::size_t points = y_grid.size();

  TailReport r;
  r.y_grid.assign(y_grid.begin(), y_grid.end());
  r.z = z;
  r.analytic.resize(points);
  for (std::size_t k = 0; k < points; ++k) r.analytic[k] = tail_bound(y_grid[k], l, s.lambda1);

  std::vector<std::uint64_t> counts(points, 0);
  if (n <= kExhaustiveLimit) {
    r.exact = true;
    const std::uint64_t total = std::uint64_t{1} << n;
    std::vector<std::uint64_t> bits(1);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      bits[0] = mask;
      const auto value = static_cast<double>(form.value(bits));
      for (std::size_t k = 0; k < points; ++k) counts[k] += static_cast<std::uint64_t>(value > y_grid[k]);
    }
    for (std::size_t k = 0; k < points; ++k) {
      const double prob = static_cast<double>(counts[k]) / static_cast<double>(total);
      r.empirical.push_back(prob);
      r.ci_lo.push_back(prob);
      r.ci_hi.push_back(prob);
      r.violations += static_cast<std::size_t>(prob > r.analytic[k] * (1.0 + kExactSlack));
    }
    return r;
  }

  if (samples < 1000) throw InvalidArgument("quadratic_form_tail: need at least 1000 samples");
  r.samples = samples;
  constexpr std::size_t kChunks = 100;
  std::vector<std::vector<std::uint64_t>> chunk_counts(kChunks, std::vector<std::uint64_t>(points, 0));
  parallel_for(kChunks, workers, [&](std::size_t c) {
    const std::size_t first = samples * c / kChunks;
    const std::size_t last = samples * (c + 1) / kChunks;
    Rng rng(derive_seed(seed, {c}));
    std::vector<std::uint64_t> bits;
    for (std::size_t i = first; i < last; ++i) {
      form.draw(rng, bits);
      const auto value = static_cast<double>(form.value(bits));
      for (std::size_t k = 0; k < points; ++k) chunk_counts[c][k] += static_cast<std::uint64_t>(value > y_grid[k]);
    }
  });
  for (const auto& cc : chunk_counts) {
    for (std::size_t k = 0; k < points; ++k) counts[k] += cc[k];
  }
  for (std::size_t k = 0; k < points; ++k) {
    r.empirical.push_back(static_cast<double>(counts[k]) / static_cast<double>(samples));
    const Interval ci = wilson_interval(counts[k], samples, z);
    r.ci_lo.push_back(ci.lo);
    r.ci_hi.push_back(ci.hi);
    r.violations += static_cast<std::size_t>(ci.lo > r.analytic[k]);
  }
  return r;
}

MgfReport mgf_check(const Graph& g, const SpectralSummary& s, std::span<const double> t_grid, std::size_t samples,
                    std::uint64_t seed, unsigned workers, double z) {
  for (double t : t_grid) {
    if (!(t >= 0.0) || (s.lambda1 > 0.0 && !(s.lambda1 * t < 1.0))) {
      throw InvalidArgument("mgf_check: t = " + std::to_string(t) + " outside [0, 1/lambda1)");
    }
  }
  const QuadraticForm form(g);
  const std::size_t n = form.vertices();
  const double l = static_cast<double>(form.edges());
  const std::size_t points = t_grid.size();

  MgfReport r;
  r.t_grid.assign(t_grid.begin(), t_grid.end());
  r.z = z;
  for (double t : t_grid) r.analytic.push_back(mgf_bound(t, l, s.lambda1));

  if (n <= kExhaustiveLimit) {
    r.exact = true;
    const std::uint64_t total = std::uint64_t{1} << n;
    std::vector<double> sums(points, 0.0);
    std::vector<std::uint64_t> bits(1);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      bits[0] = mask;
      const auto value = static_cast<double>(form.value(bits));
      for (std::size_t k = 0; k < points; ++k) sums[k] += std::exp(t_grid[k] * value);
    }
    for (std::size_t k = 0; k < points; ++k) {
      const double mean = sums[k] / static_cast<double>(total);
      r.empirical.push_back(mean);
      r.ci_lo.push_back(mean);
      r.ci_hi.push_back(mean);
      r.violations += static_cast<std::size_t>(mean > r.analytic[k] * (1.0 + kExactSlack));
    }
    return r;
  }

  if (samples < 1000) throw InvalidArgument("mgf_check: need at least 1000 samples");
  r.batches = kMgfBatches;
  const std::size_t per_batch = samples / kMgfBatches;
  r.samples = per_batch * kMgfBatches;
  std::vector<std::vector<double>> batch(points, std::vector<double>(kMgfBatches, 0.0));
  parallel_for(kMgfBatches, workers, [&](std::size_t b) {
    Rng rng(derive_seed(seed, {b}));
    std::vector<std::uint64_t> bits;
    std::vector<double> sums(points, 0.0);
    for (std::size_t i = 0; i < per_batch; ++i) {
      form.draw(rng, bits);
      const auto value = static_cast<double>(form.value(bits));
      for (std::size_t k = 0; k < points; ++k) sums[k] += std::exp(t_grid[k] * value);
    }
    for (std::size_t k = 0; k < points; ++k) batch[k][b] = sums[k] / static_cast<double>(per_batch);
  });
  for (std::size_t k = 0; k < points; ++k) {
    const BatchMean bm = batch_mean(batch[k]);
    r.empirical.push_back(bm.mean);
    r.ci_lo.push_back(bm.mean - z * bm.std_error);
    r.ci_hi.push_back(bm.mean + z * bm.std_error);
    r.violations += static_cast<std::size_t>(r.ci_lo.back() > r.analytic[k]);
  }
  return r;
}

DegreeTailReport degree_tail_experiment(std::size_t n, double p, std::size_t trials, std::uint64_t seed,
                                        std::size_t complement_checks) {
  if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument("degree_tail_experiment: p must lie in (0, 1]");
  if (n < 2) throw InvalidArgument("degree_tail_experiment: n must be >= 2");
  if (trials == 0) throw InvalidArgument("degree_tail_experiment: trials must be >= 1");
  DegreeTailReport r;
  r.n = n;
  r.p = p;
  r.trials = trials;
  const double nd = static_cast<double>(n);
  r.epsilon = 2.0 * std::sqrt(std::log(nd) / (p * nd));
  r.epsilon_valid = r.epsilon < 1.0;
  r.upper_threshold = (1.0 + r.epsilon) * p * nd;
  r.lower_threshold = (1.0 - r.epsilon) * p * nd;

  // Upper tail: degrees are Binomial(n-1, p), dominated by Binomial(n, p).
  const double a = (1.0 + r.epsilon) * p;
  r.bound_max = a >= 1.0 ? 0.0 : nd * std::exp(-nd * rel_entropy(a, p));
  // Lower tail with the exact trial count n - 1.
  const double b = r.lower_threshold / (nd - 1.0);
  if (p == 1.0 || b < 0.0) {
    r.bound_min = 0.0;
  } else if (b == 0.0) {
    r.bound_min = nd * std::pow(1.0 - p, nd - 1.0);
  } else if (b >= p) {
    r.bound_min = 1.0;
  } else {
    r.bound_min = nd * std::exp(-(nd - 1.0) * rel_entropy(b, p));
  }

  for (std::size_t t = 0; t < trials; ++t) {
    const Graph g = gen_erdos_renyi(n, p, derive_seed(seed, {t}));
    const DegreeStats d = degree_stats(g);
    r.max_exceed += static_cast<std::size_t>(d.m >= r.upper_threshold);
    r.min_below += static_cast<std::size_t>(d.delta <= r.lower_threshold);
    if (t < complement_checks) {
      ++r.complement_checks;
      const DegreeStats dc = degree_stats(complement(g));
      r.complement_mismatches += static_cast<std::size_t>(d.delta != n - 1 - dc.m);
    }
  }
  const double tr = static_cast<double>(trials);
  r.freq_max = static_cast<double>(r.max_exceed) / tr;
  r.freq_min = static_cast<double>(r.min_below) / tr;
  auto exceeds = [tr](double freq, double bound) {
    const double q = std::clamp(bound, 0.0, 1.0);
    return freq > q + 3.0 * std::sqrt(q * (1.0 - q) / tr);
  };
  r.violations = static_cast<std::size_t>(exceeds(r.freq_max, r.bound_max)) +
                 static_cast<std::size_t>(exceeds(r.freq_min, r.bound_min)) + r.complement_mismatches;
  return r;
}

}  // namespace graphmem
