#include "cskel/pmf.hpp"

#include <stdexcept>

#include "cskel/numeric.hpp"

namespace cskel {

Pmf::Pmf(Alphabet alphabet, Eigen::VectorXd probabilities)
    : alphabet_(std::move(alphabet)), probabilities_(std::move(probabilities)) {
  if (static_cast<std::size_t>(probabilities_.size()) != alphabet_.size()) {
    throw std::invalid_argument("Pmf: alphabet/vector size mismatch");
  }
  normalize_probabilities(probabilities_, "Pmf");
}

Pmf Pmf::uniform(Alphabet alphabet) {
  const auto n = static_cast<Eigen::Index>(alphabet.size());
  return Pmf(std::move(alphabet), Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n)));
}

Pmf Pmf::point(Alphabet alphabet, std::size_t index) {
  const auto n = static_cast<Eigen::Index>(alphabet.size());
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return Pmf(std::move(alphabet), std::move(v));
}

bool Pmf::full_support() const { return (probabilities_.array() > 0.0).all(); }

}  // namespace cskel
