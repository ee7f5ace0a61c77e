#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "cskel/alphabet.hpp"
#include "cskel/dataset.hpp"
#include "cskel/joint.hpp"

namespace cskel {

struct BayesNode {
  std::string name;
  Alphabet alphabet;
  std::vector<std::string> parents;
  /// One row per parent configuration (row-major over parent alphabets,
  /// first parent slowest), one column per own symbol; rows stochastic.
  Eigen::MatrixXd cpt;
};

/// Discrete Bayesian network used to generate ground-truth datasets.
class BayesNetSpec {
 public:
  explicit BayesNetSpec(std::vector<BayesNode> nodes);

  static BayesNetSpec from_json_text(const std::string& text);
  static BayesNetSpec load(const std::filesystem::path& path);

  const std::vector<BayesNode>& nodes() const { return nodes_; }
  const std::vector<std::size_t>& topological_order() const { return topo_order_; }
  std::size_t node_index(std::string_view name) const;

 private:
  std::vector<BayesNode> nodes_;
  std::vector<std::vector<std::size_t>> parent_indices_;
  std::vector<std::size_t> topo_order_;

  friend Dataset sample_bayes_net(const BayesNetSpec&, std::int64_t, std::uint64_t);
  friend JointDistribution exact_group_joint(const BayesNetSpec&,
                                             const std::vector<std::string>&,
                                             const std::vector<std::string>&,
                                             std::size_t);
};

/// Ancestral forward sampling, deterministic given the seed. Columns follow
/// the spec's node order.
Dataset sample_bayes_net(const BayesNetSpec& spec, std::int64_t n, std::uint64_t seed);

/// Exact pairwise joint by summing the full factorized distribution.
/// Throws when the total state space exceeds state_budget.
JointDistribution exact_joint(const BayesNetSpec& spec, std::string_view var_x,
                              std::string_view var_y,
                              std::size_t state_budget = std::size_t{1} << 20);

/// Exact joint of two disjoint variable groups over product alphabets.
JointDistribution exact_group_joint(const BayesNetSpec& spec,
                                    const std::vector<std::string>& group_a,
                                    const std::vector<std::string>& group_b,
                                    std::size_t state_budget = std::size_t{1} << 20);

}  // namespace cskel
