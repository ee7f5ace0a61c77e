#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "cskel/alphabet.hpp"
#include "cskel/jeffreys.hpp"
#include "cskel/joint.hpp"
#include "cskel/pmf.hpp"

namespace cskel {

/// Transition-probability matrix p(output | input): one row per input symbol,
/// every row a valid probability distribution. Rows that had to be filled
/// with the uniform fallback (no mass on the input symbol) carry a
/// degeneracy flag.
class StochasticTensor {
 public:
  StochasticTensor(Alphabet input, Alphabet output, Eigen::MatrixXd rows,
                   std::vector<char> degenerate_rows = {});

  static StochasticTensor identity(Alphabet alphabet);

  const Alphabet& input_alphabet() const { return input_; }
  const Alphabet& output_alphabet() const { return output_; }
  const Eigen::MatrixXd& rows() const { return rows_; }
  double operator()(std::size_t in, std::size_t out) const {
    return rows_(static_cast<Eigen::Index>(in), static_cast<Eigen::Index>(out));
  }
  std::size_t input_size() const { return input_.size(); }
  std::size_t output_size() const { return output_.size(); }

  bool row_degenerate(std::size_t in) const { return degenerate_rows_[in] != 0; }
  bool any_degenerate() const;

 private:
  Alphabet input_;
  Alphabet output_;
  Eigen::MatrixXd rows_;             // input x output
  std::vector<char> degenerate_rows_;
};

using CountVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// Tensor estimated from a joint distribution, with per-element Jeffreys
/// intervals and the number of samples behind each input row.
struct TensorEstimate {
  StochasticTensor tensor;
  Eigen::MatrixXd ci_low;
  Eigen::MatrixXd ci_high;
  CountVector row_counts;
  double alpha = 0.05;
};

enum class Direction { forward, reverse };

/// Conditional tensor of a joint: forward gives p(y|x), reverse p(x|y).
/// Counts-backed joints get Jeffreys intervals per element (k = cell count,
/// n = row count); population joints get point intervals. Rows without mass
/// become uniform with interval [0,1] and a degeneracy flag.
TensorEstimate transition_tensor(const JointDistribution& joint, Direction direction,
                                 double alpha = 0.05);

/// Pushes a pmf through the channel: out_y = sum_x in_x * tensor(x, y).
Pmf apply(const StochasticTensor& tensor, const Pmf& input);

/// Cascade of two channels (matrix product). Requires a.output == b.input.
StochasticTensor compose(const StochasticTensor& a, const StochasticTensor& b);

/// Reverse-traversal tensor via Bayes' rule: element (y, x) is
/// tensor(x, y) * marginal(x) / implied_output(y). Not the matrix inverse.
/// Output symbols with zero implied probability yield a uniform degenerate
/// row.
StochasticTensor dagger(const StochasticTensor& tensor, const Pmf& input_marginal);

struct CiComparison {
  bool inside = false;
  double max_deviation = 0.0;
};

/// True when every element of `composed` lies inside the direct estimate's
/// interval (within a 1e-12 float guard); max_deviation is the largest
/// distance from a composed element to its interval.
CiComparison tensors_equal_within_ci(const TensorEstimate& direct,
                                     const StochasticTensor& composed);

}  // namespace cskel
