#include "cskel/jeffreys.hpp"

#include <stdexcept>

#include <boost/math/distributions/beta.hpp>

namespace cskel {

Interval jeffreys_interval(std::int64_t k, std::int64_t n, double alpha) {
  if (k < 0 || n < 0 || k > n) {
    throw std::invalid_argument("jeffreys_interval: need 0 <= k <= n");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("jeffreys_interval: alpha must be in (0,1)");
  }
  if (n == 0) return {0.0, 1.0};

  const boost::math::beta_distribution<double> posterior(
      static_cast<double>(k) + 0.5, static_cast<double>(n - k) + 0.5);
  Interval ci;
  ci.low = (k == 0) ? 0.0 : boost::math::quantile(posterior, alpha / 2.0);
  ci.high = (k == n) ? 1.0 : boost::math::quantile(posterior, 1.0 - alpha / 2.0);
  return ci;
}

}  // namespace cskel
