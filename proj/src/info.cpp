#include "cskel/info.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cskel {

namespace {

double clamp_information(double bits, const char* context) {
  if (bits < -1e-9) {
    throw std::runtime_error(std::string(context) + ": information below tolerance");
  }
  return bits < 0.0 ? 0.0 : bits;
}

}  // namespace

Bits mutual_information(const JointDistribution& joint) {
  const auto& p = joint.probabilities();
  const Eigen::VectorXd px = p.rowwise().sum();
  const Eigen::VectorXd pz = p.colwise().sum().transpose();

  double sum = 0.0;
  for (Eigen::Index x = 0; x < p.rows(); ++x) {
    if (px(x) <= 0.0) continue;
    for (Eigen::Index z = 0; z < p.cols(); ++z) {
      const double pxz = p(x, z);
      if (pxz <= 0.0) continue;
      sum += pxz * std::log2(pxz / (px(x) * pz(z)));
    }
  }
  return Bits{clamp_information(sum, "mutual_information")};
}

PathInfoResult path_information(const Pmf& input_marginal,
                                const std::vector<StochasticTensor>& edge_tensors) {
  if (edge_tensors.empty()) {
    throw std::invalid_argument("path_information: needs at least one edge tensor");
  }
  if (!(input_marginal.alphabet() == edge_tensors.front().input_alphabet())) {
    throw std::invalid_argument("path_information: marginal does not match first tensor");
  }
  StochasticTensor composed = edge_tensors.front();
  for (std::size_t i = 1; i < edge_tensors.size(); ++i) {
    composed = compose(composed, edge_tensors[i]);
  }

  Eigen::MatrixXd implied =
      input_marginal.probabilities().asDiagonal() * composed.rows();
  JointDistribution implied_joint(input_marginal.alphabet(), composed.output_alphabet(),
                                  std::move(implied));
  Pmf implied_output = implied_joint.y_marginal();
  Bits information = mutual_information(implied_joint);

  return PathInfoResult{
      information,
      PathDistribution{input_marginal, std::move(composed), std::move(implied_joint),
                       std::move(implied_output)}};
}

CapacityResult channel_capacity(const StochasticTensor& tensor, double tol, int max_iter) {
  const auto& a = tensor.rows();
  const Eigen::Index n_in = a.rows();
  const Eigen::Index n_out = a.cols();
  const double ln2 = std::numbers::ln2_v<double>;

  // Per-row entropy term sum_y a log a, reused every iteration.
  Eigen::VectorXd row_self(n_in);
  for (Eigen::Index x = 0; x < n_in; ++x) {
    double s = 0.0;
    for (Eigen::Index y = 0; y < n_out; ++y) {
      if (a(x, y) > 0.0) s += a(x, y) * std::log(a(x, y));
    }
    row_self(x) = s;
  }

  Eigen::VectorXd p = Eigen::VectorXd::Constant(n_in, 1.0 / static_cast<double>(n_in));
  double lower_nats = 0.0;
  bool converged = false;
  int iterations = 0;

  while (iterations < max_iter) {
    ++iterations;
    const Eigen::VectorXd q = a.transpose() * p;
    Eigen::VectorXd divergence(n_in);  // D_x = sum_y a log(a / q)
    for (Eigen::Index x = 0; x < n_in; ++x) {
      double cross = 0.0;
      for (Eigen::Index y = 0; y < n_out; ++y) {
        if (a(x, y) > 0.0) cross += a(x, y) * std::log(q(y));
      }
      divergence(x) = row_self(x) - cross;
    }
    lower_nats = p.dot(divergence);
    const double upper_nats = divergence.maxCoeff();
    if (upper_nats - lower_nats < tol * ln2) {
      converged = true;
      break;
    }
    // Blahut-Arimoto update, shifted by the maximum for stability.
    Eigen::VectorXd next = p.array() * (divergence.array() - upper_nats).exp();
    next /= next.sum();
    p = std::move(next);
  }

  double capacity_bits = lower_nats / ln2;
  if (capacity_bits < 0.0) capacity_bits = 0.0;

  return CapacityResult{Bits{capacity_bits}, Pmf(tensor.input_alphabet(), std::move(p)),
                        iterations, converged};
}

double coincidence_probability(int sig_digits, int n_in, int m_out) {
  if (sig_digits < 1 || n_in < 1 || m_out < 1) {
    throw std::invalid_argument("coincidence_probability: arguments must be >= 1");
  }
  const double exponent = -static_cast<double>(sig_digits) * static_cast<double>(n_in) *
                          (static_cast<double>(m_out) - 1.0);
  return std::pow(10.0, exponent);
}

double dpi_gap(const JointDistribution& joint_xy, const JointDistribution& joint_yz,
               const JointDistribution& joint_xz) {
  if (!(joint_xy.y_alphabet() == joint_yz.x_alphabet()) ||
      !(joint_xy.x_alphabet() == joint_xz.x_alphabet()) ||
      !(joint_yz.y_alphabet() == joint_xz.y_alphabet())) {
    throw std::invalid_argument("dpi_gap: inconsistent alphabets");
  }
  const double i_xy = mutual_information(joint_xy).value;
  const double i_yz = mutual_information(joint_yz).value;
  const double i_xz = mutual_information(joint_xz).value;
  return std::min(i_xy, i_yz) - i_xz;
}

}  // namespace cskel
