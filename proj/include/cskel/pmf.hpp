#pragma once

#include <Eigen/Dense>

#include "cskel/alphabet.hpp"

namespace cskel {

/// Probability mass function over an alphabet. Entries lie in [0,1] and sum
/// to 1 within 1e-9; small drift is renormalized at construction.
class Pmf {
 public:
  Pmf(Alphabet alphabet, Eigen::VectorXd probabilities);

  static Pmf uniform(Alphabet alphabet);
  static Pmf point(Alphabet alphabet, std::size_t index);

  const Alphabet& alphabet() const { return alphabet_; }
  const Eigen::VectorXd& probabilities() const { return probabilities_; }
  double operator[](std::size_t i) const {
    return probabilities_(static_cast<Eigen::Index>(i));
  }
  std::size_t size() const { return alphabet_.size(); }
  bool full_support() const;

 private:
  Alphabet alphabet_;
  Eigen::VectorXd probabilities_;
};

}  // namespace cskel
