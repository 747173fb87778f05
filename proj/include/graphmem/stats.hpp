#pragma once

#include <cstdint>
#include <span>

namespace graphmem {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson score interval for a binomial proportion; z = 1.96 gives 95 %.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.96);

/// Mean and standard error of the mean from equally sized batch means.
struct BatchMean {
  double mean = 0.0;
  double std_error = 0.0;
};

BatchMean batch_mean(std::span<const double> batch_means);

}  // namespace graphmem
