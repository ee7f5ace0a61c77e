#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cskel/bayesnet.hpp"
#include "cskel/csv.hpp"
#include "cskel/discovery.hpp"
#include "cskel/errors.hpp"
#include "cskel/info.hpp"
#include "cskel/report_io.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInternal = 3;

void print_error(const std::string& type, const std::string& message) {
  ordered_json err;
  err["error"]["type"] = type;
  err["error"]["message"] = message;
  std::cerr << err.dump() << "\n";
}

struct CsvFlags {
  std::string delimiter = ",";
  bool no_header = false;
  std::vector<std::string> columns;
  std::size_t max_cardinality = 64;

  cskel::CsvOptions options() const {
    cskel::CsvOptions opts;
    if (delimiter.size() != 1) {
      throw std::invalid_argument("delimiter must be a single character");
    }
    opts.delimiter = delimiter[0];
    opts.has_header = !no_header;
    opts.columns = columns;
    opts.max_cardinality = max_cardinality;
    return opts;
  }
};

void add_csv_flags(CLI::App* cmd, CsvFlags& flags) {
  cmd->add_option("--delimiter", flags.delimiter, "Field delimiter (default ',')");
  cmd->add_flag("--no-header", flags.no_header, "Treat the first row as data");
  cmd->add_option("--columns", flags.columns, "Restrict to these columns")
      ->delimiter(',');
  cmd->add_option("--max_cardinality", flags.max_cardinality,
                  "Distinct-value cap per column (default 64)");
}

// Flag values that were explicitly set override the config file.
struct ConfigFlags {
  std::optional<double> alpha;
  std::optional<int> max_path_len;
  std::optional<double> capacity_epsilon;
  std::optional<double> ba_tol;
  std::optional<int> ba_max_iter;
  std::optional<bool> require_both_orientations;
  std::optional<std::int64_t> mediator_cell_budget;
  std::optional<int> threads;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& flags) {
  cmd->add_option("--alpha", flags.alpha, "Confidence level for Jeffreys intervals");
  cmd->add_option("--max_path_len", flags.max_path_len, "Indirect path length cap");
  cmd->add_option("--capacity_epsilon", flags.capacity_epsilon,
                  "Path-capacity significance threshold in bits");
  cmd->add_option("--ba_tol", flags.ba_tol, "Blahut-Arimoto bound-gap tolerance (bits)");
  cmd->add_option("--ba_max_iter", flags.ba_max_iter, "Blahut-Arimoto iteration cap");
  cmd->add_option("--require_both_orientations", flags.require_both_orientations,
                  "Require prune tests to pass in both orientations");
  cmd->add_option("--mediator_cell_budget", flags.mediator_cell_budget,
                  "Cell cap for multivariate mediator tensors");
  cmd->add_option("--threads", flags.threads, "Worker threads for pair estimation");
}

cskel::DiscoveryConfig config_from_json(const ordered_json& doc) {
  cskel::DiscoveryConfig config;
  if (!doc.is_object()) {
    throw std::invalid_argument("config: expected a JSON object");
  }
  for (const auto& [key, value] : doc.items()) {
    if (key == "alpha") {
      config.alpha = value.get<double>();
    } else if (key == "max_path_len") {
      config.max_path_len = value.get<int>();
    } else if (key == "capacity_epsilon") {
      config.capacity_epsilon = value.get<double>();
    } else if (key == "ba_tol") {
      config.ba_tol = value.get<double>();
    } else if (key == "ba_max_iter") {
      config.ba_max_iter = value.get<int>();
    } else if (key == "require_both_orientations") {
      config.require_both_orientations = value.get<bool>();
    } else if (key == "mediator_cell_budget") {
      config.mediator_cell_budget = value.get<std::int64_t>();
    } else if (key == "threads") {
      config.threads = value.get<int>();
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  return config;
}

cskel::DiscoveryConfig resolve_config(const std::string& config_path,
                                      const ConfigFlags& flags) {
  cskel::DiscoveryConfig config;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      throw cskel::IoError("cannot open config '" + config_path + "'");
    }
    ordered_json doc;
    try {
      doc = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    config = config_from_json(doc);
  }
  if (flags.alpha) config.alpha = *flags.alpha;
  if (flags.max_path_len) config.max_path_len = *flags.max_path_len;
  if (flags.capacity_epsilon) config.capacity_epsilon = *flags.capacity_epsilon;
  if (flags.ba_tol) config.ba_tol = *flags.ba_tol;
  if (flags.ba_max_iter) config.ba_max_iter = *flags.ba_max_iter;
  if (flags.require_both_orientations) {
    config.require_both_orientations = *flags.require_both_orientations;
  }
  if (flags.mediator_cell_budget) {
    config.mediator_cell_budget = *flags.mediator_cell_budget;
  }
  if (flags.threads) config.threads = *flags.threads;
  config.validate();
  return config;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw cskel::IoError("cannot write '" + path + "'");
  }
  out << text;
  if (!out) {
    throw cskel::IoError("write failed for '" + path + "'");
  }
}

int run_discover(const std::string& data_path, const CsvFlags& csv,
                 const cskel::DiscoveryConfig& config, const std::string& out_dot,
                 const std::string& out_report, bool show_pruned) {
  const cskel::Dataset dataset = cskel::load_csv(data_path, csv.options());
  const cskel::DiscoveryReport report = cskel::discover_skeleton(dataset, config);

  if (!out_report.empty()) {
    write_text_file(out_report, cskel::report_to_json(report).dump(2) + "\n");
  }
  if (!out_dot.empty()) {
    write_text_file(out_dot,
                    cskel::skeleton_to_dot(report.variables, report.final_edges,
                                           cskel::pruned_edges(report), show_pruned));
  }

  std::size_t step2_pruned = 0;
  for (const auto& r : report.step2_records) {
    if (r.outcome == "pruned") ++step2_pruned;
  }
  std::size_t step3_pruned = 0;
  for (const auto& r : report.step3_records) {
    if (r.status == "pruned") ++step3_pruned;
    if (r.status == "untestable_budget") {
      std::cout << "warning: edge " << r.x << " -- " << r.z
                << " untestable, mediator set exceeds the cell budget; edge retained\n";
    }
  }

  std::cout << "variables: " << report.variables.size() << "\n";
  std::cout << "step 1: " << report.step1_edges.size() << " significant edges\n";
  std::cout << "step 2: pruned " << step2_pruned << " edge(s), "
            << report.step2_edges.size() << " remain\n";
  std::cout << "step 3: pruned " << step3_pruned << " edge(s), "
            << report.final_edges.size() << " remain\n";
  std::cout << "skeleton:\n";
  for (const auto& [a, b] : report.final_edges) {
    std::cout << "  " << a << " -- " << b << "\n";
  }
  std::cout << "wall time: " << report.duration_seconds << " s\n";
  return kExitOk;
}

int run_capacity(const std::string& data_path, const CsvFlags& csv,
                 const cskel::DiscoveryConfig& config, const std::string& var_x,
                 const std::string& var_y) {
  const cskel::Dataset dataset = cskel::load_csv(data_path, csv.options());
  const cskel::JointDistribution joint = cskel::estimate_joint(dataset, var_x, var_y);
  const cskel::TensorEstimate forward =
      cskel::transition_tensor(joint, cskel::Direction::forward, config.alpha);
  const cskel::TensorEstimate reverse =
      cskel::transition_tensor(joint, cskel::Direction::reverse, config.alpha);
  const cskel::CapacityResult forward_capacity =
      cskel::channel_capacity(forward.tensor, config.ba_tol, config.ba_max_iter);
  const cskel::CapacityResult reverse_capacity =
      cskel::channel_capacity(reverse.tensor, config.ba_tol, config.ba_max_iter);

  ordered_json out;
  out["x"] = var_x;
  out["y"] = var_y;
  out["joint"] = cskel::joint_to_json(joint);
  out["forward"] = cskel::tensor_estimate_to_json(forward);
  out["forward_capacity"] = cskel::capacity_to_json(forward_capacity);
  out["reverse"] = cskel::tensor_estimate_to_json(reverse);
  out["reverse_capacity"] = cskel::capacity_to_json(reverse_capacity);
  out["mutual_information_bits"] = cskel::mutual_information(joint).value;
  out["significant"] =
      cskel::rows_ci_separated(forward) || cskel::rows_ci_separated(reverse);
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_pathinfo(const std::string& data_path, const CsvFlags& csv,
                 const cskel::DiscoveryConfig& config,
                 const std::vector<std::string>& path_vars) {
  if (path_vars.size() < 2) {
    throw std::invalid_argument("pathinfo: need at least two vertices");
  }
  const cskel::Dataset dataset = cskel::load_csv(data_path, csv.options());

  std::vector<cskel::StochasticTensor> edges;
  for (std::size_t i = 0; i + 1 < path_vars.size(); ++i) {
    const auto joint = cskel::estimate_joint(dataset, path_vars[i], path_vars[i + 1]);
    edges.push_back(
        cskel::transition_tensor(joint, cskel::Direction::forward, config.alpha).tensor);
  }
  const auto first_joint = cskel::estimate_joint(dataset, path_vars.front(), path_vars[1]);
  const cskel::Pmf input_marginal = first_joint.x_marginal();
  const cskel::PathInfoResult path = cskel::path_information(input_marginal, edges);

  const auto endpoint_joint =
      cskel::estimate_joint(dataset, path_vars.front(), path_vars.back());
  const double endpoint_mi = cskel::mutual_information(endpoint_joint).value;

  ordered_json out;
  out["path"] = path_vars;
  out["composed_tensor"] = cskel::matrix_to_json(path.distribution.composed_tensor.rows());
  out["path_information_bits"] = path.information.value;
  out["endpoint_mutual_information_bits"] = endpoint_mi;
  out["difference_bits"] = path.information.value - endpoint_mi;
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_simulate(const std::string& spec_path, std::int64_t n, std::uint64_t seed,
                 const std::string& out_path) {
  const cskel::BayesNetSpec spec = cskel::BayesNetSpec::load(spec_path);
  const cskel::Dataset dataset = cskel::sample_bayes_net(spec, n, seed);
  cskel::save_csv(dataset, out_path);
  std::cout << "wrote " << dataset.sample_count() << " rows x "
            << dataset.variable_count() << " columns to " << out_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Causal skeleton discovery from discrete data via channel tensors"};
  app.require_subcommand(1);

  // discover
  auto* discover = app.add_subcommand("discover", "Run the three-step skeleton discovery");
  std::string discover_data, discover_config, discover_dot, discover_report;
  bool show_pruned = false;
  std::uint64_t discover_seed = 0;
  CsvFlags discover_csv;
  ConfigFlags discover_flags;
  discover->add_option("--data", discover_data, "Input CSV")->required();
  discover->add_option("--config", discover_config, "JSON config file");
  discover->add_option("--out-dot", discover_dot, "Write skeleton DOT here");
  discover->add_option("--out-report", discover_report, "Write JSON report here");
  discover->add_flag("--show-pruned", show_pruned, "Include pruned edges (dashed) in DOT");
  discover->add_option("--seed", discover_seed,
                       "Accepted for interface symmetry; discovery is deterministic");
  add_csv_flags(discover, discover_csv);
  add_config_flags(discover, discover_flags);

  // capacity
  auto* capacity = app.add_subcommand("capacity", "Tensors, intervals, and capacity of one pair");
  std::string capacity_data, capacity_config, capacity_x, capacity_y;
  CsvFlags capacity_csv;
  ConfigFlags capacity_flags;
  capacity->add_option("--data", capacity_data, "Input CSV")->required();
  capacity->add_option("--config", capacity_config, "JSON config file");
  capacity->add_option("--x", capacity_x, "First variable")->required();
  capacity->add_option("--y", capacity_y, "Second variable")->required();
  add_csv_flags(capacity, capacity_csv);
  add_config_flags(capacity, capacity_flags);

  // pathinfo
  auto* pathinfo = app.add_subcommand("pathinfo", "Path information along an ordered vertex list");
  std::string pathinfo_data, pathinfo_config;
  std::vector<std::string> pathinfo_vars;
  CsvFlags pathinfo_csv;
  ConfigFlags pathinfo_flags;
  pathinfo->add_option("--data", pathinfo_data, "Input CSV")->required();
  pathinfo->add_option("--config", pathinfo_config, "JSON config file");
  pathinfo->add_option("--path", pathinfo_vars, "Ordered vertex list")
      ->required()
      ->delimiter(',');
  add_csv_flags(pathinfo, pathinfo_csv);
  add_config_flags(pathinfo, pathinfo_flags);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Sample a Bayesian-network spec to CSV");
  std::string simulate_spec, simulate_out;
  std::int64_t simulate_n = 0;
  std::uint64_t simulate_seed = 0;
  simulate->add_option("--spec", simulate_spec, "BayesNetSpec JSON")->required();
  simulate->add_option("--n", simulate_n, "Sample count")->required();
  simulate->add_option("--seed", simulate_seed, "RNG seed (default 0)");
  simulate->add_option("--out", simulate_out, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("validation", e.what());
    return kExitValidation;
  }

  try {
    if (*discover) {
      return run_discover(discover_data, discover_csv,
                          resolve_config(discover_config, discover_flags), discover_dot,
                          discover_report, show_pruned);
    }
    if (*capacity) {
      return run_capacity(capacity_data, capacity_csv,
                          resolve_config(capacity_config, capacity_flags), capacity_x,
                          capacity_y);
    }
    if (*pathinfo) {
      return run_pathinfo(pathinfo_data, pathinfo_csv,
                          resolve_config(pathinfo_config, pathinfo_flags), pathinfo_vars);
    }
    if (*simulate) {
      return run_simulate(simulate_spec, simulate_n, simulate_seed, simulate_out);
    }
  } catch (const cskel::IoError& e) {
    print_error("io", e.what());
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    print_error("validation", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return kExitInternal;
  }
  return kExitOk;
}
