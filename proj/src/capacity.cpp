#include "graphmem/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "graphmem/errors.hpp"
#include "graphmem/parallel.hpp"
#include "graphmem/random.hpp"
#include "graphmem/stats.hpp"

namespace graphmem {
namespace {

TrialResult finish_trial(const Network& net, std::size_t mu, const SpinState& target, const SpinState& start,
                         std::size_t k_max, double rho) {
  const DynamicsOutcome run = run_dynamics(net, start, UpdateMode::parallel, k_max);
  TrialResult r;
  r.target_mu = mu;
  r.rho = rho;
  r.steps = run.steps;
  r.terminal = run.terminal;
  r.final_distance = hamming(run.final, target);
  r.recovered = run.terminal == Terminal::fixed_point && r.final_distance == 0;
  return r;
}

struct Tally {
  std::size_t trials = 0;
  std::size_t successes = 0;
  double steps_sum = 0.0;

  void add(const Tally& o) {
    trials += o.trials;
    successes += o.successes;
    steps_sum += o.steps_sum;
  }

  RateEstimate estimate() const {
    RateEstimate e;
    e.trials = trials;
    e.successes = successes;
    e.rate = trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
    const Interval ci = wilson_interval(successes, trials);
    e.ci_lo = ci.lo;
    e.ci_hi = ci.hi;
    e.mean_steps = successes ? steps_sum / static_cast<double>(successes) : 0.0;
    return e;
  }
};

Tally tally_of(const RateEstimate& e) {
  return {e.trials, e.successes, e.mean_steps * static_cast<double>(e.successes)};
}

}  // namespace

TrialResult basin_trial(const Network& net, std::size_t mu, double rho, std::size_t k_max, std::uint64_t seed) {
  if (mu >= net.patterns().count()) throw InvalidArgument("basin_trial: pattern index out of range");
  if (!(rho >= 0.0 && rho < 0.5)) throw InvalidArgument("basin_trial: rho must lie in [0, 1/2)");
  const SpinState target = net.patterns().row(mu);
  return finish_trial(net, mu, target, corrupt(target, rho, seed), k_max, rho);
}

TrialResult basin_trial_flips(const Network& net, std::size_t mu, std::span<const VertexId> flips,
                              std::size_t k_max) {
  if (mu >= net.patterns().count()) throw InvalidArgument("basin_trial: pattern index out of range");
  const SpinState target = net.patterns().row(mu);
  const double rho = static_cast<double>(flips.size()) / static_cast<double>(net.size());
  return finish_trial(net, mu, target, corrupt_set(target, flips), k_max, rho);
}

RateEstimate recovery_rate(const Network& net, const Corruption& corruption, std::size_t k_max,
                           std::size_t trials, std::uint64_t seed, unsigned workers) {
  if (trials == 0) throw InvalidArgument("recovery_rate: trials must be >= 1");
  const std::size_t m = net.patterns().count();
  std::vector<TrialResult> results(trials);
  parallel_for(trials, workers, [&](std::size_t t) {
    Rng rng(derive_seed(seed, {t}));
    const auto mu = static_cast<std::size_t>(uniform_below(rng, m));
    results[t] = corruption.fixed_flips.empty()
                     ? basin_trial(net, mu, corruption.rho, k_max, rng())
                     : basin_trial_flips(net, mu, corruption.fixed_flips, k_max);
  });
  Tally tally;
  for (const TrialResult& r : results) {
    ++tally.trials;
    if (r.recovered) {
      ++tally.successes;
      tally.steps_sum += static_cast<double>(r.steps);
    }
  }
  return tally.estimate();
}

RateEstimate rate_at(const Graph& g, std::size_t m_patterns, const SearchOptions& opt, std::size_t trials,
                     std::uint64_t stream) {
  if (opt.k_max == 0) throw InvalidArgument("rate_at: k_max must be >= 1");
  const std::size_t per_set = std::max<std::size_t>(1, opt.trials_per_pattern_set);
  const std::size_t sets = (trials + per_set - 1) / per_set;
  std::vector<RateEstimate> parts(sets);
  parallel_for(sets, opt.workers, [&](std::size_t b) {
    const PatternSet patterns = sample_patterns(m_patterns, g.num_vertices(), derive_seed(opt.seed, {stream, m_patterns, b, 0}));
    const Network net(g, patterns);
    const std::size_t count = std::min(per_set, trials - b * per_set);
    parts[b] = recovery_rate(net, opt.corruption, opt.k_max, count, derive_seed(opt.seed, {stream, m_patterns, b, 1}), 1);
  });
  Tally total;
  for (const RateEstimate& e : parts) total.add(tally_of(e));
  return total.estimate();
}

CapacityEstimate capacity_search(const Graph& g, SearchOptions opt) {
  if (!(opt.threshold > 0.0 && opt.threshold < 1.0)) throw InvalidArgument("capacity_search: threshold must lie in (0, 1)");
  if (opt.trials == 0) throw InvalidArgument("capacity_search: trials must be >= 1");
  if (opt.corruption.fixed_flips.empty() && !(opt.corruption.rho >= 0.0 && opt.corruption.rho < 0.5)) {
    throw InvalidArgument("capacity_search: rho must lie in [0, 1/2)");
  }
  const std::size_t n = g.num_vertices();
  if (opt.k_max == 0) opt.k_max = default_step_budget(spectrum_summary(g), n);
  const std::size_t max_m = opt.max_m ? opt.max_m : 4 * n;

  CapacityEstimate out;
  out.threshold = opt.threshold;
  out.trials_per_m = opt.trials;
  out.k_max = opt.k_max;
  out.rho = opt.corruption.fixed_flips.empty()
                ? opt.corruption.rho
                : static_cast<double>(opt.corruption.fixed_flips.size()) / static_cast<double>(n);

  std::map<std::size_t, RateEstimate> curve;
  auto passes = [&](std::size_t m) {
    RateEstimate e = rate_at(g, m, opt, opt.trials, 0);
    if (e.ci_lo < opt.threshold && opt.threshold <= e.ci_hi) e = rate_at(g, m, opt, 4 * opt.trials, 1);
    curve[m] = e;
    return e.rate >= opt.threshold;
  };

  std::size_t lo = 0;
  std::size_t hi = 0;
  if (passes(1)) {
    lo = 1;
    while (lo < max_m) {
      const std::size_t next = std::min(2 * lo, max_m);
      if (passes(next)) {
        lo = next;
      } else {
        hi = next;
        break;
      }
    }
    while (hi != 0 && hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (passes(mid)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
  }
  out.m_hat = lo;
  for (const auto& [m, e] : curve) out.curve.push_back({m, e});
  return out;
}

}  // namespace graphmem
