#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace cskel {

/// Seedable random source with a fully specified algorithm so sampled
/// datasets reproduce across platforms: 64-bit Mersenne Twister
/// (std::mt19937_64), uniform doubles taken from the top 53 bits.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Index drawn from a categorical distribution by CDF walk.
  std::size_t categorical(const Eigen::Ref<const Eigen::VectorXd>& probabilities) {
    const double u = unit();
    double cumulative = 0.0;
    const Eigen::Index n = probabilities.size();
    for (Eigen::Index i = 0; i < n; ++i) {
      cumulative += probabilities(i);
      if (u < cumulative) return static_cast<std::size_t>(i);
    }
    return static_cast<std::size_t>(n - 1);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cskel
