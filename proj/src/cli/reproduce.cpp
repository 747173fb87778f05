#include <algorithm>
#include <cmath>
#include <string>

#include "graphmem/cli.hpp"
#include "graphmem/errors.hpp"
#include "graphmem/random.hpp"

namespace graphmem::cli {

Suite parse_suite(const std::string& name) {
  if (name == "complete") return Suite::complete;
  if (name == "gnp") return Suite::gnp;
  if (name == "powerlaw") return Suite::powerlaw;
  throw ConfigError("suite", "expected complete, gnp or powerlaw, got \"" + name + "\"");
}

std::string_view to_string(Suite s) {
  switch (s) {
    case Suite::complete:
      return "complete";
    case Suite::gnp:
      return "gnp";
    case Suite::powerlaw:
      return "powerlaw";
  }
  return "unknown";
}

void check_suite(const ReproduceOptions& opt) {
  if (opt.sizes.size() < 3) throw InvalidArgument("reproduce: the size ladder needs at least 3 sizes");
  for (std::size_t n : opt.sizes) {
    if (n < 4) throw InvalidArgument("reproduce: sizes must be >= 4");
    const double nd = static_cast<double>(n);
    const double log_n = std::log(nd);
    switch (opt.suite) {
      case Suite::complete:
        break;
      case Suite::gnp:
        if (!(opt.p > 0.0 && opt.p <= 1.0)) throw InvalidArgument("reproduce gnp: p must lie in (0, 1]");
        if (opt.p < opt.c0 * log_n * log_n / nd) {
          throw InvalidArgument("reproduce gnp: p = " + std::to_string(opt.p) + " below c0 (log n)^2 / n = " +
                                std::to_string(opt.c0 * log_n * log_n / nd) + " at n = " + std::to_string(n));
        }
        break;
      case Suite::powerlaw: {
        if (!(opt.beta > 3.0)) {
          throw InvalidArgument("reproduce powerlaw: beta must exceed 3 (the power-law capacity result assumes beta > 3)");
        }
        if (!(opt.d_avg > 0.0 && opt.d_avg < opt.m_bar && opt.m_bar < nd)) {
          throw InvalidArgument("reproduce powerlaw: need 0 < d_avg < m_bar < n");
        }
        const double root = std::sqrt(opt.m_bar);
        const bool main_branch = opt.d_avg > opt.c_degree * root * std::pow(log_n, 1.5);
        const bool alt_branch = opt.m_bar >= std::pow(log_n, 4.0) && opt.d_avg > opt.c_degree * root * log_n;
        if (!main_branch && !alt_branch) {
          throw InvalidArgument("reproduce powerlaw: d_avg = " + std::to_string(opt.d_avg) +
                                " violates d > c sqrt(m_bar) (log n)^{3/2} at n = " + std::to_string(n) +
                                " (and the m_bar >= (log n)^4 alternative)");
        }
        break;
      }
    }
  }
}

ReproduceSummary reproduce_corollaries(const ReproduceOptions& opt) {
  check_suite(opt);
  ReproduceSummary summary;
  for (std::size_t n : opt.sizes) {
    const double nd = static_cast<double>(n);
    const double log_n = std::log(nd);
    const std::uint64_t graph_seed = derive_seed(opt.seed, {n, 0});
    Graph g;
    ReproduceRow row;
    row.n = n;
    switch (opt.suite) {
      case Suite::complete:
        g = gen_complete(n);
        row.predictor = nd / log_n;
        break;
      case Suite::gnp:
        g = gen_erdos_renyi(n, opt.p, graph_seed);
        row.predictor = opt.p * nd / log_n;
        break;
      case Suite::powerlaw:
        g = gen_chung_lu(powerlaw_weights(n, opt.beta, opt.d_avg, opt.m_bar), graph_seed);
        row.predictor = opt.d_avg * opt.d_avg / (opt.m_bar * log_n);
        break;
    }
    row.spectrum = spectrum_summary(g);
    row.degrees = degree_stats(g);
    row.h1 = check_h1(row.spectrum, row.degrees, opt.c1);
    row.h2 = check_h2(row.spectrum, n, opt.c_h2);
    row.theory = theoretical_capacity(row.spectrum, row.degrees, n, TheoryParams{}.alpha);
    row.k_max = default_step_budget(row.spectrum, n);

    SearchOptions search;
    search.corruption.rho = opt.rho;
    search.k_max = row.k_max;
    search.trials = opt.trials;
    search.threshold = opt.threshold;
    search.seed = derive_seed(opt.seed, {n, 1});
    search.workers = opt.workers;
    search.trials_per_pattern_set = opt.trials_per_pattern_set;
    const CapacityEstimate est = capacity_search(g, search);
    row.m_hat = est.m_hat;
    for (const CurvePoint& pt : est.curve) {
      if (pt.m_patterns == est.m_hat) row.mean_steps = pt.estimate.mean_steps;
    }
    row.ratio = row.m_hat / row.predictor;
    summary.rows.push_back(row);
  }

  double lo = 0.0;
  double hi = 0.0;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t k = 0;
  for (const ReproduceRow& r : summary.rows) {
    if (r.m_hat == 0 || !(r.predictor > 0.0)) continue;
    lo = k == 0 ? r.ratio : std::min(lo, r.ratio);
    hi = k == 0 ? r.ratio : std::max(hi, r.ratio);
    const double x = std::log(r.predictor);
    const double y = std::log(static_cast<double>(r.m_hat));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++k;
  }
  summary.ratio_spread = k > 0 ? hi / lo : 0.0;
  if (k >= 2) {
    const double kd = static_cast<double>(k);
    const double denom = kd * sxx - sx * sx;
    summary.slope = denom != 0.0 ? (kd * sxy - sx * sy) / denom : 0.0;
  }
  return summary;
}

}  // namespace graphmem::cli
