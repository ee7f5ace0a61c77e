#pragma once

// Pinned Bayesian-network instances shared by the unit and acceptance
// suites, plus small random generators for property-style tests.

#include <string>
#include <vector>

#include "cskel/bayesnet.hpp"
#include "cskel/rng.hpp"

namespace fixtures {

inline cskel::Alphabet binary() { return cskel::Alphabet({"0", "1"}); }

inline Eigen::MatrixXd bsc_rows(double crossover) {
  Eigen::MatrixXd m(2, 2);
  m << 1.0 - crossover, crossover, crossover, 1.0 - crossover;
  return m;
}

inline Eigen::MatrixXd root_rows(double p_one) {
  Eigen::MatrixXd m(1, 2);
  m << 1.0 - p_one, p_one;
  return m;
}

// Rows over parent configs (first parent slowest): p(child = 1 | parents).
inline Eigen::MatrixXd two_parent_rows(double p00, double p01, double p10, double p11) {
  Eigen::MatrixXd m(4, 2);
  m << 1.0 - p00, p00, 1.0 - p01, p01, 1.0 - p10, p10, 1.0 - p11, p11;
  return m;
}

/// X -> Y -> Z with symmetric noise on each link.
inline cskel::BayesNetSpec chain_spec(double eps1, double eps2, double root_p = 0.5) {
  return cskel::BayesNetSpec({
      {"X", binary(), {}, root_rows(root_p)},
      {"Y", binary(), {"X"}, bsc_rows(eps1)},
      {"Z", binary(), {"Y"}, bsc_rows(eps2)},
  });
}

/// Y <- X -> Z.
inline cskel::BayesNetSpec fork_spec(double eps1, double eps2, double root_p = 0.5) {
  return cskel::BayesNetSpec({
      {"X", binary(), {}, root_rows(root_p)},
      {"Y", binary(), {"X"}, bsc_rows(eps1)},
      {"Z", binary(), {"X"}, bsc_rows(eps2)},
  });
}

/// X -> Y <- Z with independent fair-coin causes. The child responds to each
/// parent marginally (monotone CPT, not XOR-like, so pairwise channels carry
/// signal).
inline cskel::BayesNetSpec collider_spec() {
  return cskel::BayesNetSpec({
      {"X", binary(), {}, root_rows(0.5)},
      {"Y", binary(), {"X", "Z"}, two_parent_rows(0.15, 0.5, 0.5, 0.85)},
      {"Z", binary(), {}, root_rows(0.5)},
  });
}

/// Two routes X -> Y -> Z and X -> U -> Z with Z depending on both mediators:
/// the pinned instance where path information through Y alone must differ
/// from the endpoint mutual information (population gap ~0.111 bits).
inline cskel::BayesNetSpec two_route_spec() {
  return cskel::BayesNetSpec({
      {"X", binary(), {}, root_rows(0.5)},
      {"Y", binary(), {"X"}, bsc_rows(0.1)},
      {"U", binary(), {"X"}, bsc_rows(0.15)},
      {"Z", binary(), {"Y", "U"}, two_parent_rows(0.05, 0.7, 0.8, 0.95)},
  });
}

/// Diamond X -> {Y, U} -> Z with no direct X -> Z mechanism. Neither
/// single-mediator composition matches the direct X-Z tensor, but the
/// product-alphabet mediator {Y, U} composes exactly.
inline cskel::BayesNetSpec diamond_spec() {
  return cskel::BayesNetSpec({
      {"X", binary(), {}, root_rows(0.5)},
      {"Y", binary(), {"X"}, bsc_rows(0.1)},
      {"U", binary(), {"X"}, bsc_rows(0.2)},
      {"Z", binary(), {"Y", "U"}, two_parent_rows(0.1, 0.6, 0.7, 0.9)},
  });
}

inline Eigen::VectorXd random_pmf(cskel::Rng& rng, int n, double floor = 0.02) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = floor + rng.unit();
  v /= v.sum();
  return v;
}

inline Eigen::MatrixXd random_stochastic_rows(cskel::Rng& rng, int n_in, int n_out,
                                              double floor = 0.02) {
  Eigen::MatrixXd m(n_in, n_out);
  for (int r = 0; r < n_in; ++r) m.row(r) = random_pmf(rng, n_out, floor).transpose();
  return m;
}

inline std::vector<std::string> labels_for(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

}  // namespace fixtures
