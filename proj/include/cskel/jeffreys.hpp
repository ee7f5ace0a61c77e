#pragma once

#include <cstdint>

namespace cskel {

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

/// Equal-tailed Beta(k + 1/2, n - k + 1/2) credible interval for a binomial
/// proportion. Conventions: low = 0 when k == 0, high = 1 when k == n, and
/// [0, 1] when n == 0. Throws std::invalid_argument on k > n, negative
/// inputs, or alpha outside (0, 1).
Interval jeffreys_interval(std::int64_t k, std::int64_t n, double alpha = 0.05);

}  // namespace cskel
