#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cskel/dataset.hpp"
#include "cskel/graph.hpp"

namespace cskel {

struct DiscoveryConfig {
  double alpha = 0.05;
  int max_path_len = 4;
  double capacity_epsilon = 0.01;  // bits
  double ba_tol = 1e-9;
  int ba_max_iter = 10000;
  bool require_both_orientations = true;
  std::int64_t mediator_cell_budget = 4096;
  int threads = 1;

  void validate() const;  // throws std::invalid_argument
};

/// Joint distribution source for a variable pair; lets the pipeline run on
/// empirical counts or population-exact distributions alike.
using PairJointProvider =
    std::function<JointDistribution(const std::string&, const std::string&)>;

/// Joint distribution source for two variable groups (product alphabets).
using GroupJointProvider = std::function<JointDistribution(
    const std::vector<std::string>&, const std::vector<std::string>&)>;

/// Step-1 measurement of one unordered pair (x < y lexicographically).
struct PairRecord {
  std::string x, y;
  JointDistribution joint;  // x rows, y columns
  TensorEstimate forward;   // x -> y
  TensorEstimate reverse;   // y -> x
  CapacityResult forward_capacity;
  CapacityResult reverse_capacity;
  double mutual_information_bits = 0.0;
  bool significant = false;
};

/// Step-2 triangle test of edge (x, z) against the composition through a
/// mediator.
struct TriangleRecord {
  std::string x, z, mediator;
  bool forward_inside = false;
  bool reverse_inside = false;
  double forward_deviation = 0.0;
  double reverse_deviation = 0.0;
  Eigen::MatrixXd composed_forward;  // x -> mediator -> z
  Eigen::MatrixXd composed_reverse;  // z -> mediator -> x
  bool candidate = false;
  /// "pruned" | "rejected" | "skipped_edge_already_pruned" |
  /// "skipped_triangle_broken"
  std::string outcome;
};

struct PathCapacityRecord {
  std::vector<std::string> vertices;
  double capacity_bits = 0.0;
  bool significant = false;
};

/// Step-3 multivariate test of one remaining edge.
struct MultivariateRecord {
  std::string x, z;
  std::vector<PathCapacityRecord> paths;
  int significant_paths = 0;
  std::vector<std::string> mediator_set;  // empty when the step was skipped
  /// "skipped_insufficient_paths" | "untestable_budget" | "retained" |
  /// "pruned"
  std::string status;
  bool forward_inside = false;
  bool reverse_inside = false;
  double forward_deviation = 0.0;
  double reverse_deviation = 0.0;
  Eigen::MatrixXd composed_forward;
  Eigen::MatrixXd composed_reverse;
};

struct Step1Result {
  SkeletonGraph graph;
  std::vector<PairRecord> pairs;
};

struct Step2Result {
  SkeletonGraph graph;
  std::vector<TriangleRecord> records;
};

struct Step3Result {
  SkeletonGraph graph;
  std::vector<MultivariateRecord> records;
};

/// True when some output symbol has disjoint intervals across two input
/// rows: a sampling-noise-proof witness that the rows (and so the channel
/// capacity) differ from zero.
bool rows_ci_separated(const TensorEstimate& estimate);

/// Step 1: estimate joints, tensors, and capacities for every pair; keep an
/// edge when some output symbol has disjoint Jeffreys intervals across two
/// input rows in at least one orientation.
Step1Result step1_capacity_graph(const Dataset& dataset, const DiscoveryConfig& config);
Step1Result step1_capacity_graph(const std::vector<std::string>& variables,
                                 const PairJointProvider& joints,
                                 const DiscoveryConfig& config);

/// Step 2: triangle-based pruning with the bivariate tensors from step 1.
/// Candidates whose composed tensor sits inside the direct estimate's
/// intervals are pruned one at a time (ascending max deviation, then
/// lexicographic), re-checking triangle intactness before each prune.
Step2Result step2_bivariate_prune(const SkeletonGraph& graph, const DiscoveryConfig& config);

/// Alphabet cardinality lookup by variable name (for the mediator cell
/// budget check).
using CardinalityFn = std::function<std::size_t(const std::string&)>;

/// Step 3: multivariate pruning for edges with two or more
/// capacity-significant indirect paths, using the union of their mediators
/// over a product alphabet.
Step3Result step3_multivariate_prune(const SkeletonGraph& graph, const Dataset& dataset,
                                     const DiscoveryConfig& config);
Step3Result step3_multivariate_prune(const SkeletonGraph& graph,
                                     const CardinalityFn& cardinality,
                                     const GroupJointProvider& joints,
                                     const DiscoveryConfig& config);

struct DiscoveryReport {
  std::vector<std::string> variables;
  DiscoveryConfig config;
  std::vector<PairRecord> pairs;
  std::vector<std::pair<std::string, std::string>> step1_edges;
  std::vector<TriangleRecord> step2_records;
  std::vector<std::pair<std::string, std::string>> step2_edges;
  std::vector<MultivariateRecord> step3_records;
  std::vector<std::pair<std::string, std::string>> final_edges;
  SkeletonGraph final_graph;
  /// Reported on stdout and kept here for callers; deliberately absent from
  /// the JSON serialization so identical runs emit identical bytes.
  double duration_seconds = 0.0;
};

/// Runs steps 1-3 and records every intermediate decision.
DiscoveryReport discover_skeleton(const Dataset& dataset,
                                  const DiscoveryConfig& config = {});

}  // namespace cskel
