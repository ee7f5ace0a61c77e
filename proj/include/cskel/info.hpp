#pragma once

#include <compare>
#include <vector>

#include "cskel/joint.hpp"
#include "cskel/pmf.hpp"
#include "cskel/tensor.hpp"

namespace cskel {

/// Information measure in bits (log base 2).
struct Bits {
  double value = 0.0;
  auto operator<=>(const Bits&) const = default;
};

/// Mutual information of a joint distribution, in bits. Zero-probability
/// cells contribute nothing; tiny negative float residue is clamped to 0.
Bits mutual_information(const JointDistribution& joint);

/// Distributions induced by pushing an input marginal through the composed
/// tensor of a path.
struct PathDistribution {
  Pmf input_marginal;
  StochasticTensor composed_tensor;
  JointDistribution implied_joint;
  Pmf implied_output;
};

struct PathInfoResult {
  Bits information;
  PathDistribution distribution;
};

/// Path information: mutual information of the joint implied by the input
/// marginal and the left-to-right composition of the edge tensors. For a
/// single edge this equals the pairwise mutual information.
PathInfoResult path_information(const Pmf& input_marginal,
                                const std::vector<StochasticTensor>& edge_tensors);

struct CapacityResult {
  Bits capacity;
  Pmf optimal_input;
  int iterations = 0;
  bool converged = false;
};

/// Channel capacity via Blahut-Arimoto alternating maximization, started
/// from the uniform input distribution. Stops when the capacity bound gap
/// drops below tol (in bits) or after max_iter iterations; the converged
/// flag reports which. Never throws on non-convergence.
CapacityResult channel_capacity(const StochasticTensor& tensor, double tol = 1e-9,
                                int max_iter = 10000);

/// Scaling estimate 10^(-sig_digits * n_in * (m_out - 1)) of the probability
/// that a random stochastic tensor coincides with a given one at sig_digits
/// significant digits.
double coincidence_probability(int sig_digits, int n_in, int m_out);

/// min[I(X;Y), I(Y;Z)] - I(X;Z). Non-negative for population joints of a
/// chain X -> Y -> Z (data processing inequality).
double dpi_gap(const JointDistribution& joint_xy, const JointDistribution& joint_yz,
               const JointDistribution& joint_xz);

}  // namespace cskel
