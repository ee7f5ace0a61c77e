#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cskel/discovery.hpp"

namespace cskel {

nlohmann::ordered_json matrix_to_json(const Eigen::MatrixXd& m);
nlohmann::ordered_json joint_to_json(const JointDistribution& joint);
nlohmann::ordered_json tensor_estimate_to_json(const TensorEstimate& estimate);
nlohmann::ordered_json capacity_to_json(const CapacityResult& result);
nlohmann::ordered_json config_to_json(const DiscoveryConfig& config);

/// Full machine-readable report. Key order is fixed and the volatile wall
/// time is omitted, so identical runs serialize to identical bytes.
nlohmann::ordered_json report_to_json(const DiscoveryReport& report);

/// Step-1 edges that did not survive to the final skeleton.
std::vector<std::pair<std::string, std::string>> pruned_edges(
    const DiscoveryReport& report);

/// Graphviz DOT text for the skeleton; pruned edges appear dashed when
/// show_pruned is set.
std::string skeleton_to_dot(
    const std::vector<std::string>& vertices,
    const std::vector<std::pair<std::string, std::string>>& edges,
    const std::vector<std::pair<std::string, std::string>>& pruned,
    bool show_pruned);

}  // namespace cskel
