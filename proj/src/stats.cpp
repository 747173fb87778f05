#include "graphmem/stats.hpp"

#include <algorithm>
#include <cmath>

namespace graphmem {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

BatchMean batch_mean(std::span<const double> batch_means) {
  BatchMean out;
  const std::size_t b = batch_means.size();
  if (b == 0) return out;
  double sum = 0.0;
  for (double x : batch_means) sum += x;
  out.mean = sum / static_cast<double>(b);
  if (b < 2) return out;
  double ss = 0.0;
  for (double x : batch_means) ss += (x - out.mean) * (x - out.mean);
  out.std_error = std::sqrt(ss / static_cast<double>(b - 1) / static_cast<double>(b));
  return out;
}

}  // namespace graphmem
