#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "graphmem/bounds.hpp"
#include "graphmem/capacity.hpp"
#include "graphmem/errors.hpp"

namespace graphmem {

void TheoryParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(name) + " must be a positive number");
  };
  positive(alpha, "alpha");
  positive(c1, "c1");
  positive(c2, "c2");
  positive(c_steps, "c_steps");
  positive(c_iter, "c_iter");
  if (alpha_c) {
    positive(*alpha_c, "alpha_c");
    if (!(alpha < *alpha_c)) throw InvalidArgument("alpha must be below alpha_c");
  }
}

CapacityPrediction theoretical_capacity(const SpectralSummary& s, const DegreeStats& d, std::size_t n,
                                        double alpha) {
  if (n < 3) throw InvalidArgument("theoretical_capacity: n must be >= 3");
  if (!(alpha > 0.0)) throw InvalidArgument("theoretical_capacity: alpha must be positive");
  CapacityPrediction out;
  if (d.m == 0) return out;
  const double m = d.m;
  out.value = alpha * s.lambda1 * s.lambda1 / (m * std::log(static_cast<double>(n))) - s.kappa * s.lambda1 / m;
  out.feasible = out.value > 0.0;
  return out;
}

double rho_zero(const SpectralSummary& s, const DegreeStats& d, double m_patterns, double c2) {
  if (!(m_patterns >= 1.0)) throw InvalidArgument("rho_zero: M must be >= 1");
  if (!(c2 > 0.0)) throw InvalidArgument("rho_zero: c2 must be positive");
  if (!(s.lambda1 > 0.0)) return 1.0;
  const double noise = s.kappa + m_patterns * d.m / s.lambda1;
  return std::exp(-c2 * s.lambda1 / noise);
}

FRhoResult f_rho(double rho, const SpectralSummary& s, const DegreeStats& d, double m_patterns,
                 const TheoryParams& params) {
  if (!(rho > 0.0 && rho < 0.5)) throw InvalidArgument("f_rho: rho must lie in (0, 1/2)");
  if (!(s.lambda1 > 0.0)) throw InvalidArgument("f_rho: lambda1 must be positive");
  const double ratio = s.kappa / s.lambda1;
  const double h = entropy(rho);
  const double load = m_patterns * s.kappa / (s.lambda1 * s.lambda1) * std::log(1.0 / rho);
  FRhoResult r;
  r.branches = {params.c1 * rho * ratio * ratio, params.c1 * rho * h, params.c1 * ratio * h,
                params.c1 * rho * std::cbrt(load * load), rho_zero(s, d, m_patterns, params.c2)};
  const auto it = std::max_element(r.branches.begin(), r.branches.end());
  r.active = static_cast<std::size_t>(it - r.branches.begin());
  r.value = *it;
  return r;
}

StepPrediction predict_steps(const SpectralSummary& s, double m_patterns, std::size_t n, double rho_start,
                             double c_steps, double ratio_factor) {
  if (!(rho_start > 0.0 && rho_start <= std::exp(-1.0))) {
    throw InvalidArgument("predict_steps: rho_start must lie in (0, 1/e]");
  }
  if (n < 3) throw InvalidArgument("predict_steps: n must be >= 3");
  if (!(c_steps > 0.0)) throw InvalidArgument("predict_steps: c must be positive");
  const double log_n = std::log(static_cast<double>(n));
  if (!(s.lambda1 > 0.0) || !(s.lambda1 > ratio_factor * log_n * s.kappa)) {
    throw InvalidArgument("predict_steps: requires lambda1 / kappa > " + std::to_string(ratio_factor) +
                          " log n");
  }
  const double ratio = s.kappa / s.lambda1;
  const double load = m_patterns * s.kappa / (s.lambda1 * s.lambda1);
  const double target = 1.0 / static_cast<double>(n);

  auto advance = [&](std::size_t which, double v) {
    switch (which) {
      case 0:
        return c_steps * v * ratio * ratio;
      case 1:
        return c_steps * v * entropy(v);
      case 2:
        return c_steps * ratio * entropy(v);
      default: {
        const double inner = load * std::log(1.0 / v);
        return c_steps * v * std::cbrt(inner * inner);
      }
    }
  };

  StepPrediction out;
  std::array<double, 4> seq{rho_start, rho_start, rho_start, rho_start};
  std::array<bool, 4> done{};
  for (std::size_t k = 0; k < 4; ++k) done[k] = seq[k] < target;
  std::size_t iter = 0;
  while (!std::all_of(done.begin(), done.end(), [](bool b) { return b; })) {
    if (iter == kStepIterationCap) {
      out.diverged = true;
      out.n0 = iter;
      return out;
    }
    ++iter;
    for (std::size_t k = 0; k < 4; ++k) {
      if (done[k]) continue;
      const double next = advance(k, seq[k]);
      if (!(next < seq[k])) {
        out.diverged = true;
        out.n0 = iter;
        return out;
      }
      ++out.monotonicity_checks;
      seq[k] = next;
      if (next < target) {
        done[k] = true;
        out.crossings[k] = iter;
      }
    }
  }
  out.n0 = iter;
  return out;
}

std::size_t default_step_budget(const SpectralSummary& s, std::size_t n, double c_iter) {
  const double log_n = std::log(static_cast<double>(std::max<std::size_t>(n, 3)));
  double spectral_term = 0.0;
  if (s.kappa > 0.0 && s.lambda1 > 0.0) {
    spectral_term = log_n / std::max(std::log(s.lambda1 / (s.kappa * log_n)), 0.1);
  }
  const double k = c_iter * std::max(std::log(log_n), spectral_term);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(k)));
}

}  // namespace graphmem
