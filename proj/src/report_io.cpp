#include "cskel/report_io.hpp"

#include <algorithm>

namespace cskel {

using nlohmann::ordered_json;

ordered_json matrix_to_json(const Eigen::MatrixXd& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

ordered_json count_matrix_to_json(const CountMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json edge_pairs_to_json(
    const std::vector<std::pair<std::string, std::string>>& edges) {
  ordered_json out = ordered_json::array();
  for (const auto& [a, b] : edges) out.push_back(ordered_json::array({a, b}));
  return out;
}

}  // namespace

ordered_json joint_to_json(const JointDistribution& joint) {
  ordered_json out;
  out["x_alphabet"] = joint.x_alphabet().labels();
  out["y_alphabet"] = joint.y_alphabet().labels();
  out["sample_size"] = joint.sample_size();
  if (joint.counts_backed()) {
    out["counts"] = count_matrix_to_json(joint.counts());
  } else {
    out["probabilities"] = matrix_to_json(joint.probabilities());
  }
  return out;
}

ordered_json tensor_estimate_to_json(const TensorEstimate& estimate) {
  ordered_json out;
  out["tensor"] = matrix_to_json(estimate.tensor.rows());
  out["ci_low"] = matrix_to_json(estimate.ci_low);
  out["ci_high"] = matrix_to_json(estimate.ci_high);
  ordered_json counts = ordered_json::array();
  for (Eigen::Index i = 0; i < estimate.row_counts.size(); ++i) {
    counts.push_back(estimate.row_counts(i));
  }
  out["row_counts"] = std::move(counts);
  ordered_json degenerate = ordered_json::array();
  for (std::size_t i = 0; i < estimate.tensor.input_size(); ++i) {
    degenerate.push_back(estimate.tensor.row_degenerate(i));
  }
  out["degenerate_rows"] = std::move(degenerate);
  out["alpha"] = estimate.alpha;
  return out;
}

ordered_json capacity_to_json(const CapacityResult& result) {
  ordered_json out;
  out["capacity_bits"] = result.capacity.value;
  ordered_json input = ordered_json::array();
  for (Eigen::Index i = 0; i < result.optimal_input.probabilities().size(); ++i) {
    input.push_back(result.optimal_input.probabilities()(i));
  }
  out["optimal_input"] = std::move(input);
  out["iterations"] = result.iterations;
  out["converged"] = result.converged;
  return out;
}

// The thread count is an execution detail with no bearing on the result, so
// it stays out of the echoed config and reports remain byte-identical for
// any --threads value.
ordered_json config_to_json(const DiscoveryConfig& config) {
  ordered_json out;
  out["alpha"] = config.alpha;
  out["max_path_len"] = config.max_path_len;
  out["capacity_epsilon"] = config.capacity_epsilon;
  out["ba_tol"] = config.ba_tol;
  out["ba_max_iter"] = config.ba_max_iter;
  out["require_both_orientations"] = config.require_both_orientations;
  out["mediator_cell_budget"] = config.mediator_cell_budget;
  return out;
}

ordered_json report_to_json(const DiscoveryReport& report) {
  ordered_json out;
  out["format"] = "cskel-report";
  out["version"] = 1;
  out["variables"] = report.variables;
  out["config"] = config_to_json(report.config);

  ordered_json pairs = ordered_json::array();
  for (const auto& pair : report.pairs) {
    ordered_json p;
    p["x"] = pair.x;
    p["y"] = pair.y;
    p["joint"] = joint_to_json(pair.joint);
    p["forward"] = tensor_estimate_to_json(pair.forward);
    p["forward_capacity"] = capacity_to_json(pair.forward_capacity);
    p["reverse"] = tensor_estimate_to_json(pair.reverse);
    p["reverse_capacity"] = capacity_to_json(pair.reverse_capacity);
    p["mutual_information_bits"] = pair.mutual_information_bits;
    p["significant"] = pair.significant;
    pairs.push_back(std::move(p));
  }
  out["pairs"] = std::move(pairs);
  out["step1_edges"] = edge_pairs_to_json(report.step1_edges);

  ordered_json step2 = ordered_json::array();
  for (const auto& record : report.step2_records) {
    ordered_json r;
    r["x"] = record.x;
    r["z"] = record.z;
    r["mediator"] = record.mediator;
    r["forward_inside"] = record.forward_inside;
    r["reverse_inside"] = record.reverse_inside;
    r["forward_deviation"] = record.forward_deviation;
    r["reverse_deviation"] = record.reverse_deviation;
    r["composed_forward"] = matrix_to_json(record.composed_forward);
    r["composed_reverse"] = matrix_to_json(record.composed_reverse);
    r["candidate"] = record.candidate;
    r["outcome"] = record.outcome;
    step2.push_back(std::move(r));
  }
  out["step2_tests"] = std::move(step2);
  out["step2_edges"] = edge_pairs_to_json(report.step2_edges);

  ordered_json step3 = ordered_json::array();
  for (const auto& record : report.step3_records) {
    ordered_json r;
    r["x"] = record.x;
    r["z"] = record.z;
    ordered_json paths = ordered_json::array();
    for (const auto& path : record.paths) {
      ordered_json pj;
      pj["vertices"] = path.vertices;
      pj["capacity_bits"] = path.capacity_bits;
      pj["significant"] = path.significant;
      paths.push_back(std::move(pj));
    }
    r["paths"] = std::move(paths);
    r["significant_paths"] = record.significant_paths;
    r["mediator_set"] = record.mediator_set;
    r["status"] = record.status;
    if (record.status == "pruned" || record.status == "retained") {
      r["forward_inside"] = record.forward_inside;
      r["reverse_inside"] = record.reverse_inside;
      r["forward_deviation"] = record.forward_deviation;
      r["reverse_deviation"] = record.reverse_deviation;
      r["composed_forward"] = matrix_to_json(record.composed_forward);
      r["composed_reverse"] = matrix_to_json(record.composed_reverse);
    }
    step3.push_back(std::move(r));
  }
  out["step3_tests"] = std::move(step3);
  out["final_edges"] = edge_pairs_to_json(report.final_edges);
  return out;
}

std::vector<std::pair<std::string, std::string>> pruned_edges(
    const DiscoveryReport& report) {
  std::vector<std::pair<std::string, std::string>> result;
  for (const auto& edge : report.step1_edges) {
    if (std::find(report.final_edges.begin(), report.final_edges.end(), edge) ==
        report.final_edges.end()) {
      result.push_back(edge);
    }
  }
  return result;
}

namespace {

std::string dot_quote(const std::string& name) {
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string skeleton_to_dot(
    const std::vector<std::string>& vertices,
    const std::vector<std::pair<std::string, std::string>>& edges,
    const std::vector<std::pair<std::string, std::string>>& pruned,
    bool show_pruned) {
  std::string out = "graph skeleton {\n";
  for (const auto& v : vertices) {
    out += "  " + dot_quote(v) + ";\n";
  }
  for (const auto& [a, b] : edges) {
    out += "  " + dot_quote(a) + " -- " + dot_quote(b) + ";\n";
  }
  if (show_pruned) {
    for (const auto& [a, b] : pruned) {
      out += "  " + dot_quote(a) + " -- " + dot_quote(b) + " [style=dashed];\n";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace cskel
