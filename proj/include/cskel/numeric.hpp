#pragma once

#include <Eigen/Dense>

namespace cskel {

// Tolerance for probability normalization. Constructions renormalize when the
// drift is below this bound and throw otherwise.
inline constexpr double kSumTolerance = 1e-9;

// Clamp threshold for negative entries produced by float arithmetic.
inline constexpr double kNegativeClamp = 1e-12;

/// Validates a probability vector in place: clamps negatives above
/// -kNegativeClamp to zero, checks the [0,1] range, renormalizes when
/// |sum - 1| < kSumTolerance and throws std::invalid_argument otherwise.
void normalize_probabilities(Eigen::Ref<Eigen::VectorXd> v, const char* context);

/// Row-wise variant for stochastic matrices.
void normalize_stochastic_rows(Eigen::MatrixXd& m, const char* context);

/// Whole-matrix variant for joint distributions (total sum 1).
void normalize_joint_matrix(Eigen::MatrixXd& m, const char* context);

}  // namespace cskel
