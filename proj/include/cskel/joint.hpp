#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "cskel/alphabet.hpp"
#include "cskel/pmf.hpp"

namespace cskel {

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Joint distribution over (X, Y). Counts-backed joints come from data and
/// satisfy probabilities == counts / sample_size; population joints
/// (sample_size == 0) carry exact probabilities and zero counts.
class JointDistribution {
 public:
  JointDistribution(Alphabet x, Alphabet y, CountMatrix counts);
  JointDistribution(Alphabet x, Alphabet y, Eigen::MatrixXd probabilities);

  const Alphabet& x_alphabet() const { return x_; }
  const Alphabet& y_alphabet() const { return y_; }
  const Eigen::MatrixXd& probabilities() const { return probabilities_; }
  const CountMatrix& counts() const { return counts_; }
  std::int64_t sample_size() const { return sample_size_; }
  bool counts_backed() const { return sample_size_ > 0; }

  Pmf x_marginal() const;
  Pmf y_marginal() const;
  JointDistribution transposed() const;

 private:
  Alphabet x_;
  Alphabet y_;
  Eigen::MatrixXd probabilities_;
  CountMatrix counts_;
  std::int64_t sample_size_ = 0;
};

}  // namespace cskel
