#include "cskel/numeric.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cskel {

namespace {

void check_range_and_clamp(Eigen::Ref<Eigen::VectorXd> v, const char* context) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) < 0.0) {
      if (v(i) < -kNegativeClamp) {
        throw std::invalid_argument(std::string(context) + ": negative probability");
      }
      v(i) = 0.0;
    }
    if (v(i) > 1.0 + kSumTolerance) {
      throw std::invalid_argument(std::string(context) + ": probability above 1");
    }
  }
}

}  // namespace

void normalize_probabilities(Eigen::Ref<Eigen::VectorXd> v, const char* context) {
  if (v.size() == 0) {
    throw std::invalid_argument(std::string(context) + ": empty probability vector");
  }
  check_range_and_clamp(v, context);
  const double sum = v.sum();
  if (std::abs(sum - 1.0) >= kSumTolerance) {
    throw std::invalid_argument(std::string(context) + ": probabilities sum to " +
                                std::to_string(sum));
  }
  if (sum != 1.0 && sum > 0.0) v /= sum;
}

void normalize_stochastic_rows(Eigen::MatrixXd& m, const char* context) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Eigen::VectorXd row = m.row(r);
    normalize_probabilities(row, context);
    m.row(r) = row;
  }
}

void normalize_joint_matrix(Eigen::MatrixXd& m, const char* context) {
  if (m.size() == 0) {
    throw std::invalid_argument(std::string(context) + ": empty joint matrix");
  }
  Eigen::VectorXd flat = Eigen::Map<Eigen::VectorXd>(m.data(), m.size());
  normalize_probabilities(flat, context);
  m = Eigen::Map<Eigen::MatrixXd>(flat.data(), m.rows(), m.cols());
}

}  // namespace cskel
