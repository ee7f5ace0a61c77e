#include "cskel/joint.hpp"

#include <stdexcept>

#include "cskel/numeric.hpp"

namespace cskel {

JointDistribution::JointDistribution(Alphabet x, Alphabet y, CountMatrix counts)
    : x_(std::move(x)), y_(std::move(y)), counts_(std::move(counts)) {
  if (counts_.rows() != static_cast<Eigen::Index>(x_.size()) ||
      counts_.cols() != static_cast<Eigen::Index>(y_.size())) {
    throw std::invalid_argument("JointDistribution: counts shape mismatch");
  }
  if ((counts_.array() < 0).any()) {
    throw std::invalid_argument("JointDistribution: negative count");
  }
  sample_size_ = counts_.sum();
  if (sample_size_ < 1) {
    throw std::invalid_argument("JointDistribution: empty counts");
  }
  probabilities_ = counts_.cast<double>() / static_cast<double>(sample_size_);
}

JointDistribution::JointDistribution(Alphabet x, Alphabet y, Eigen::MatrixXd probabilities)
    : x_(std::move(x)), y_(std::move(y)), probabilities_(std::move(probabilities)) {
  if (probabilities_.rows() != static_cast<Eigen::Index>(x_.size()) ||
      probabilities_.cols() != static_cast<Eigen::Index>(y_.size())) {
    throw std::invalid_argument("JointDistribution: probability shape mismatch");
  }
  normalize_joint_matrix(probabilities_, "JointDistribution");
  counts_ = CountMatrix::Zero(probabilities_.rows(), probabilities_.cols());
  sample_size_ = 0;
}

Pmf JointDistribution::x_marginal() const {
  return Pmf(x_, probabilities_.rowwise().sum());
}

Pmf JointDistribution::y_marginal() const {
  return Pmf(y_, probabilities_.colwise().sum().transpose());
}

JointDistribution JointDistribution::transposed() const {
  if (counts_backed()) {
    return JointDistribution(y_, x_, CountMatrix(counts_.transpose()));
  }
  return JointDistribution(y_, x_, Eigen::MatrixXd(probabilities_.transpose()));
}

}  // namespace cskel
