#include "cskel/discovery.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>

namespace cskel {

void DiscoveryConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("DiscoveryConfig: alpha must be in (0,1)");
  }
  if (max_path_len < 2) {
    throw std::invalid_argument("DiscoveryConfig: max_path_len must be >= 2");
  }
  if (capacity_epsilon < 0.0) {
    throw std::invalid_argument("DiscoveryConfig: capacity_epsilon must be >= 0");
  }
  if (ba_tol <= 0.0) {
    throw std::invalid_argument("DiscoveryConfig: ba_tol must be > 0");
  }
  if (ba_max_iter < 1) {
    throw std::invalid_argument("DiscoveryConfig: ba_max_iter must be >= 1");
  }
  if (mediator_cell_budget < 1) {
    throw std::invalid_argument("DiscoveryConfig: mediator_cell_budget must be >= 1");
  }
  if (threads < 1) {
    throw std::invalid_argument("DiscoveryConfig: threads must be >= 1");
  }
}

namespace {

// Row separation below this is treated as float noise, so population-exact
// point intervals only separate rows that genuinely differ.
constexpr double kRowSeparationTol = 1e-9;

}  // namespace

bool rows_ci_separated(const TensorEstimate& estimate) {
  const Eigen::Index n_in = estimate.tensor.rows().rows();
  const Eigen::Index n_out = estimate.tensor.rows().cols();
  for (Eigen::Index y = 0; y < n_out; ++y) {
    for (Eigen::Index x1 = 0; x1 < n_in; ++x1) {
      for (Eigen::Index x2 = x1 + 1; x2 < n_in; ++x2) {
        if (estimate.ci_low(x1, y) > estimate.ci_high(x2, y) + kRowSeparationTol ||
            estimate.ci_low(x2, y) > estimate.ci_high(x1, y) + kRowSeparationTol) {
          return true;
        }
      }
    }
  }
  return false;
}

namespace {

PairRecord measure_pair(const std::string& x, const std::string& y,
                        JointDistribution joint, const DiscoveryConfig& config) {
  TensorEstimate forward = transition_tensor(joint, Direction::forward, config.alpha);
  TensorEstimate reverse = transition_tensor(joint, Direction::reverse, config.alpha);
  CapacityResult forward_capacity =
      channel_capacity(forward.tensor, config.ba_tol, config.ba_max_iter);
  CapacityResult reverse_capacity =
      channel_capacity(reverse.tensor, config.ba_tol, config.ba_max_iter);
  const double mi = mutual_information(joint).value;
  const bool significant = rows_ci_separated(forward) || rows_ci_separated(reverse);
  return PairRecord{x,
                    y,
                    std::move(joint),
                    std::move(forward),
                    std::move(reverse),
                    std::move(forward_capacity),
                    std::move(reverse_capacity),
                    mi,
                    significant};
}

}  // namespace

Step1Result step1_capacity_graph(const std::vector<std::string>& variables,
                                 const PairJointProvider& joints,
                                 const DiscoveryConfig& config) {
  config.validate();
  if (variables.size() < 2) {
    throw std::invalid_argument("step1_capacity_graph: needs at least 2 variables");
  }

  std::vector<std::string> sorted = variables;
  std::sort(sorted.begin(), sorted.end());

  std::vector<std::pair<std::string, std::string>> pair_names;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      pair_names.emplace_back(sorted[i], sorted[j]);
    }
  }

  std::vector<std::optional<PairRecord>> slots(pair_names.size());
  auto measure_slot = [&](std::size_t i) {
    const auto& [x, y] = pair_names[i];
    slots[i] = measure_pair(x, y, joints(x, y), config);
  };

  const int workers =
      std::min<int>(config.threads, static_cast<int>(pair_names.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < pair_names.size(); ++i) measure_slot(i);
  } else {
    // The provider must tolerate concurrent calls; results land in
    // per-pair slots, so the outcome is independent of scheduling.
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < pair_names.size();
             i = next.fetch_add(1)) {
          measure_slot(i);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  SkeletonGraph graph(variables);
  std::vector<PairRecord> records;
  records.reserve(slots.size());
  for (auto& slot : slots) {
    PairRecord record = std::move(*slot);
    if (record.significant) {
      graph.add_edge(record.x, record.y,
                     EdgeData{record.joint, record.forward, record.reverse,
                              record.forward_capacity, record.reverse_capacity, true});
    }
    records.push_back(std::move(record));
  }
  return Step1Result{std::move(graph), std::move(records)};
}

Step1Result step1_capacity_graph(const Dataset& dataset, const DiscoveryConfig& config) {
  auto provider = [&dataset](const std::string& a, const std::string& b) {
    return estimate_joint(dataset, a, b);
  };
  return step1_capacity_graph(dataset.variable_names(), provider, config);
}

Step2Result step2_bivariate_prune(const SkeletonGraph& graph,
                                  const DiscoveryConfig& config) {
  config.validate();

  struct Candidate {
    double deviation;
    std::string x, z, mediator;
    std::size_t record_index;
  };

  std::vector<TriangleRecord> records;
  std::vector<Candidate> candidates;

  for (const auto& [x, z] : graph.edge_list()) {
    const auto nx = graph.neighbors(x);
    const auto nz = graph.neighbors(z);
    std::vector<std::string> common;
    std::set_intersection(nx.begin(), nx.end(), nz.begin(), nz.end(),
                          std::back_inserter(common));
    for (const auto& y : common) {
      const StochasticTensor composed_fwd = compose(
          graph.oriented_estimate(x, y).tensor, graph.oriented_estimate(y, z).tensor);
      const StochasticTensor composed_rev = compose(
          graph.oriented_estimate(z, y).tensor, graph.oriented_estimate(y, x).tensor);
      const EdgeData& direct = graph.edge(x, z);
      const CiComparison fwd = tensors_equal_within_ci(direct.forward, composed_fwd);
      const CiComparison rev = tensors_equal_within_ci(direct.reverse, composed_rev);
      const bool candidate =
          fwd.inside && (!config.require_both_orientations || rev.inside);

      TriangleRecord record{x,
                            z,
                            y,
                            fwd.inside,
                            rev.inside,
                            fwd.max_deviation,
                            rev.max_deviation,
                            composed_fwd.rows(),
                            composed_rev.rows(),
                            candidate,
                            candidate ? std::string() : "rejected"};
      if (candidate) {
        const double deviation = config.require_both_orientations
                                     ? std::max(fwd.max_deviation, rev.max_deviation)
                                     : fwd.max_deviation;
        candidates.push_back(Candidate{deviation, x, z, y, records.size()});
      }
      records.push_back(std::move(record));
    }
  }

  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return std::tie(a.deviation, a.x, a.z, a.mediator) <
                            std::tie(b.deviation, b.x, b.z, b.mediator);
                   });

  SkeletonGraph result = graph;
  for (const auto& c : candidates) {
    TriangleRecord& record = records[c.record_index];
    if (!result.has_edge(c.x, c.z)) {
      record.outcome = "skipped_edge_already_pruned";
    } else if (!result.has_edge(c.x, c.mediator) || !result.has_edge(c.mediator, c.z)) {
      record.outcome = "skipped_triangle_broken";
    } else {
      result.remove_edge(c.x, c.z);
      record.outcome = "pruned";
    }
  }
  return Step2Result{std::move(result), std::move(records)};
}

Step3Result step3_multivariate_prune(const SkeletonGraph& graph,
                                     const CardinalityFn& cardinality,
                                     const GroupJointProvider& joints,
                                     const DiscoveryConfig& config) {
  config.validate();
  SkeletonGraph result = graph;
  std::vector<MultivariateRecord> records;

  for (const auto& [x, z] : graph.edge_list()) {
    MultivariateRecord record;
    record.x = x;
    record.z = z;

    std::set<std::string> mediators;
    for (const auto& path : enumerate_simple_paths(result, x, z, config.max_path_len)) {
      const CapacityResult cap =
          channel_capacity(path_tensor(result, path), config.ba_tol, config.ba_max_iter);
      const bool significant = cap.capacity.value > config.capacity_epsilon;
      if (significant) {
        ++record.significant_paths;
        for (const auto& m : path.interior()) mediators.insert(m);
      }
      record.paths.push_back(
          PathCapacityRecord{path.vertices, cap.capacity.value, significant});
    }

    if (record.significant_paths < 2) {
      record.status = "skipped_insufficient_paths";
      records.push_back(std::move(record));
      continue;
    }

    record.mediator_set.assign(mediators.begin(), mediators.end());
    const EdgeData& direct = result.edge(x, z);
    const std::size_t card_x = direct.forward.tensor.input_size();
    const std::size_t card_z = direct.forward.tensor.output_size();
    std::size_t card_s = 1;
    bool over_budget = false;
    for (const auto& m : record.mediator_set) {
      card_s *= cardinality(m);
      if (static_cast<std::int64_t>(card_s * std::max(card_x, card_z)) >
          config.mediator_cell_budget) {
        over_budget = true;
        break;
      }
    }
    if (over_budget) {
      record.status = "untestable_budget";
      records.push_back(std::move(record));
      continue;
    }

    const JointDistribution joint_xs = joints({x}, record.mediator_set);
    const JointDistribution joint_sz = joints(record.mediator_set, {z});
    const TensorEstimate t_xs = transition_tensor(joint_xs, Direction::forward, config.alpha);
    const TensorEstimate t_sz = transition_tensor(joint_sz, Direction::forward, config.alpha);
    const TensorEstimate t_zs = transition_tensor(joint_sz, Direction::reverse, config.alpha);
    const TensorEstimate t_sx = transition_tensor(joint_xs, Direction::reverse, config.alpha);

    const StochasticTensor composed_fwd = compose(t_xs.tensor, t_sz.tensor);
    const StochasticTensor composed_rev = compose(t_zs.tensor, t_sx.tensor);
    const CiComparison fwd = tensors_equal_within_ci(direct.forward, composed_fwd);
    const CiComparison rev = tensors_equal_within_ci(direct.reverse, composed_rev);

    record.forward_inside = fwd.inside;
    record.reverse_inside = rev.inside;
    record.forward_deviation = fwd.max_deviation;
    record.reverse_deviation = rev.max_deviation;
    record.composed_forward = composed_fwd.rows();
    record.composed_reverse = composed_rev.rows();

    const bool prune = fwd.inside && (!config.require_both_orientations || rev.inside);
    if (prune) {
      result.remove_edge(x, z);
      record.status = "pruned";
    } else {
      record.status = "retained";
    }
    records.push_back(std::move(record));
  }
  return Step3Result{std::move(result), std::move(records)};
}

Step3Result step3_multivariate_prune(const SkeletonGraph& graph, const Dataset& dataset,
                                     const DiscoveryConfig& config) {
  auto cardinality = [&dataset](const std::string& name) {
    return dataset.alphabet(dataset.variable_index(name)).size();
  };
  auto joints = [&dataset](const std::vector<std::string>& a,
                           const std::vector<std::string>& b) {
    return estimate_group_joint(dataset, a, b);
  };
  return step3_multivariate_prune(graph, cardinality, joints, config);
}

DiscoveryReport discover_skeleton(const Dataset& dataset, const DiscoveryConfig& config) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();

  if (dataset.variable_count() < 2) {
    // No pairs to test: the skeleton is empty.
    SkeletonGraph graph(dataset.variable_names());
    DiscoveryReport report{dataset.variable_names(), config, {}, {}, {}, {}, {}, {},
                           std::move(graph)};
    report.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
  }

  Step1Result s1 = step1_capacity_graph(dataset, config);
  Step2Result s2 = step2_bivariate_prune(s1.graph, config);
  Step3Result s3 = step3_multivariate_prune(s2.graph, dataset, config);

  DiscoveryReport report{dataset.variable_names(),
                         config,
                         std::move(s1.pairs),
                         s1.graph.edge_list(),
                         std::move(s2.records),
                         s2.graph.edge_list(),
                         std::move(s3.records),
                         s3.graph.edge_list(),
                         std::move(s3.graph)};
  report.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace cskel
