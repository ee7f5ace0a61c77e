#include "cskel/tensor.hpp"

#include <algorithm>
#include <stdexcept>

#include "cskel/numeric.hpp"

namespace cskel {

namespace {
constexpr double kCiGuard = 1e-12;
}

StochasticTensor::StochasticTensor(Alphabet input, Alphabet output, Eigen::MatrixXd rows,
                                   std::vector<char> degenerate_rows)
    : input_(std::move(input)),
      output_(std::move(output)),
      rows_(std::move(rows)),
      degenerate_rows_(std::move(degenerate_rows)) {
  if (rows_.rows() != static_cast<Eigen::Index>(input_.size()) ||
      rows_.cols() != static_cast<Eigen::Index>(output_.size())) {
    throw std::invalid_argument("StochasticTensor: matrix shape mismatch");
  }
  normalize_stochastic_rows(rows_, "StochasticTensor");
  if (degenerate_rows_.empty()) {
    degenerate_rows_.assign(input_.size(), 0);
  } else if (degenerate_rows_.size() != input_.size()) {
    throw std::invalid_argument("StochasticTensor: degeneracy flags size mismatch");
  }
}

StochasticTensor StochasticTensor::identity(Alphabet alphabet) {
  const auto n = static_cast<Eigen::Index>(alphabet.size());
  Alphabet output = alphabet;
  return StochasticTensor(std::move(alphabet), std::move(output),
                          Eigen::MatrixXd::Identity(n, n));
}

bool StochasticTensor::any_degenerate() const {
  return std::any_of(degenerate_rows_.begin(), degenerate_rows_.end(),
                     [](char f) { return f != 0; });
}

TensorEstimate transition_tensor(const JointDistribution& joint, Direction direction,
                                 double alpha) {
  if (direction == Direction::reverse) {
    return transition_tensor(joint.transposed(), Direction::forward, alpha);
  }

  const auto& p = joint.probabilities();
  const Eigen::Index n_in = p.rows();
  const Eigen::Index n_out = p.cols();

  Eigen::MatrixXd rows(n_in, n_out);
  Eigen::MatrixXd ci_low(n_in, n_out);
  Eigen::MatrixXd ci_high(n_in, n_out);
  CountVector row_counts = CountVector::Zero(n_in);
  std::vector<char> degenerate(static_cast<std::size_t>(n_in), 0);

  const bool empirical = joint.counts_backed();
  const double uniform = 1.0 / static_cast<double>(n_out);

  for (Eigen::Index x = 0; x < n_in; ++x) {
    const double mass = p.row(x).sum();
    if (empirical) row_counts(x) = joint.counts().row(x).sum();

    if (mass <= 0.0) {
      rows.row(x).setConstant(uniform);
      ci_low.row(x).setZero();
      ci_high.row(x).setOnes();
      degenerate[static_cast<std::size_t>(x)] = 1;
      continue;
    }
    rows.row(x) = p.row(x) / mass;
    if (empirical) {
      const std::int64_t n = row_counts(x);
      for (Eigen::Index y = 0; y < n_out; ++y) {
        const Interval ci = jeffreys_interval(joint.counts()(x, y), n, alpha);
        ci_low(x, y) = ci.low;
        ci_high(x, y) = ci.high;
      }
    } else {
      // Population joint: no sampling uncertainty, the interval is the point.
      ci_low.row(x) = rows.row(x);
      ci_high.row(x) = rows.row(x);
    }
  }

  StochasticTensor tensor(joint.x_alphabet(), joint.y_alphabet(), std::move(rows),
                          std::move(degenerate));
  return TensorEstimate{std::move(tensor), std::move(ci_low), std::move(ci_high),
                        std::move(row_counts), alpha};
}

Pmf apply(const StochasticTensor& tensor, const Pmf& input) {
  if (!(input.alphabet() == tensor.input_alphabet())) {
    throw std::invalid_argument("apply: input alphabet mismatch");
  }
  Eigen::VectorXd out = tensor.rows().transpose() * input.probabilities();
  return Pmf(tensor.output_alphabet(), std::move(out));
}

StochasticTensor compose(const StochasticTensor& a, const StochasticTensor& b) {
  if (!(a.output_alphabet() == b.input_alphabet())) {
    throw std::invalid_argument("compose: alphabet chaining mismatch");
  }
  Eigen::MatrixXd product = a.rows() * b.rows();
  // A degenerate row stays degenerate; a row that routes mass through a
  // degenerate row of b inherits the flag.
  std::vector<char> degenerate(a.input_size(), 0);
  for (std::size_t x = 0; x < a.input_size(); ++x) {
    if (a.row_degenerate(x)) {
      degenerate[x] = 1;
      continue;
    }
    for (std::size_t y = 0; y < b.input_size(); ++y) {
      if (b.row_degenerate(y) && a(x, y) > 0.0) {
        degenerate[x] = 1;
        break;
      }
    }
  }
  return StochasticTensor(a.input_alphabet(), b.output_alphabet(), std::move(product),
                          std::move(degenerate));
}

StochasticTensor dagger(const StochasticTensor& tensor, const Pmf& input_marginal) {
  if (!(input_marginal.alphabet() == tensor.input_alphabet())) {
    throw std::invalid_argument("dagger: marginal alphabet mismatch");
  }
  const Eigen::VectorXd implied_output =
      tensor.rows().transpose() * input_marginal.probabilities();
  const Eigen::Index n_in = tensor.rows().rows();
  const Eigen::Index n_out = tensor.rows().cols();

  Eigen::MatrixXd reversed(n_out, n_in);
  std::vector<char> degenerate(static_cast<std::size_t>(n_out), 0);
  const double uniform = 1.0 / static_cast<double>(n_in);

  for (Eigen::Index y = 0; y < n_out; ++y) {
    if (implied_output(y) <= 0.0) {
      reversed.row(y).setConstant(uniform);
      degenerate[static_cast<std::size_t>(y)] = 1;
      continue;
    }
    for (Eigen::Index x = 0; x < n_in; ++x) {
      reversed(y, x) = tensor.rows()(x, y) * input_marginal[static_cast<std::size_t>(x)] /
                       implied_output(y);
    }
  }
  return StochasticTensor(tensor.output_alphabet(), tensor.input_alphabet(),
                          std::move(reversed), std::move(degenerate));
}

CiComparison tensors_equal_within_ci(const TensorEstimate& direct,
                                     const StochasticTensor& composed) {
  const auto& tensor = direct.tensor;
  if (!(tensor.input_alphabet() == composed.input_alphabet()) ||
      !(tensor.output_alphabet() == composed.output_alphabet())) {
    throw std::invalid_argument("tensors_equal_within_ci: alphabet mismatch");
  }
  double max_deviation = 0.0;
  for (Eigen::Index x = 0; x < composed.rows().rows(); ++x) {
    for (Eigen::Index y = 0; y < composed.rows().cols(); ++y) {
      const double value = composed.rows()(x, y);
      double deviation = 0.0;
      if (value < direct.ci_low(x, y)) {
        deviation = direct.ci_low(x, y) - value;
      } else if (value > direct.ci_high(x, y)) {
        deviation = value - direct.ci_high(x, y);
      }
      max_deviation = std::max(max_deviation, deviation);
    }
  }
  return CiComparison{max_deviation <= kCiGuard, max_deviation};
}

}  // namespace cskel
