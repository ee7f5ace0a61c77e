#include "cskel/bayesnet.hpp"

#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cskel/errors.hpp"
#include "cskel/numeric.hpp"
#include "cskel/rng.hpp"

namespace cskel {

BayesNetSpec::BayesNetSpec(std::vector<BayesNode> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) {
    throw std::invalid_argument("BayesNetSpec: needs at least one node");
  }

  parent_indices_.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes_.size(); ++j) {
      if (nodes_[i].name == nodes_[j].name) {
        throw std::invalid_argument("BayesNetSpec: duplicate node '" + nodes_[i].name + "'");
      }
    }
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& node = nodes_[i];
    std::size_t config_count = 1;
    for (const auto& parent : node.parents) {
      const std::size_t pi = node_index(parent);
      if (pi == i) {
        throw std::invalid_argument("BayesNetSpec: node '" + node.name +
                                    "' lists itself as parent");
      }
      parent_indices_[i].push_back(pi);
      config_count *= nodes_[pi].alphabet.size();
    }
    if (node.cpt.rows() != static_cast<Eigen::Index>(config_count) ||
        node.cpt.cols() != static_cast<Eigen::Index>(node.alphabet.size())) {
      throw std::invalid_argument("BayesNetSpec: CPT shape mismatch for '" + node.name +
                                  "'");
    }
    Eigen::MatrixXd cpt = nodes_[i].cpt;
    normalize_stochastic_rows(cpt, "BayesNetSpec CPT");
    nodes_[i].cpt = std::move(cpt);
  }

  // Kahn's algorithm; ties resolved by node order for a stable result.
  std::vector<std::size_t> remaining_parents(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    remaining_parents[i] = parent_indices_[i].size();
  }
  std::vector<char> placed(nodes_.size(), 0);
  while (topo_order_.size() < nodes_.size()) {
    bool progressed = false;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (placed[i] || remaining_parents[i] != 0) continue;
      placed[i] = 1;
      topo_order_.push_back(i);
      for (std::size_t j = 0; j < nodes_.size(); ++j) {
        for (auto p : parent_indices_[j]) {
          if (p == i) --remaining_parents[j];
        }
      }
      progressed = true;
    }
    if (!progressed) {
      throw std::invalid_argument("BayesNetSpec: parent graph has a cycle");
    }
  }
}

std::size_t BayesNetSpec::node_index(std::string_view name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].name == name) return i;
  }
  throw std::invalid_argument("BayesNetSpec: unknown node '" + std::string(name) + "'");
}

BayesNetSpec BayesNetSpec::from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("BayesNetSpec: invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array()) {
    throw std::invalid_argument("BayesNetSpec: expected {\"nodes\": [...]}");
  }
  std::vector<BayesNode> nodes;
  for (const auto& entry : doc["nodes"]) {
    BayesNode node;
    node.name = entry.at("name").get<std::string>();
    node.alphabet = Alphabet(entry.at("alphabet").get<std::vector<std::string>>());
    if (entry.contains("parents")) {
      node.parents = entry.at("parents").get<std::vector<std::string>>();
    }
    const auto& cpt = entry.at("cpt");
    if (!cpt.is_array() || cpt.empty()) {
      throw std::invalid_argument("BayesNetSpec: node '" + node.name + "' has no CPT rows");
    }
    node.cpt.resize(static_cast<Eigen::Index>(cpt.size()),
                    static_cast<Eigen::Index>(node.alphabet.size()));
    for (std::size_t r = 0; r < cpt.size(); ++r) {
      const auto row = cpt[r].get<std::vector<double>>();
      if (row.size() != node.alphabet.size()) {
        throw std::invalid_argument("BayesNetSpec: CPT row width mismatch for '" +
                                    node.name + "'");
      }
      for (std::size_t c = 0; c < row.size(); ++c) {
        node.cpt(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c];
      }
    }
    nodes.push_back(std::move(node));
  }
  return BayesNetSpec(std::move(nodes));
}

BayesNetSpec BayesNetSpec::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("BayesNetSpec: cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

namespace {

std::size_t parent_config_index(const BayesNetSpec& spec,
                                const std::vector<std::size_t>& parent_indices,
                                const std::vector<std::int32_t>& state) {
  std::size_t index = 0;
  for (auto p : parent_indices) {
    index = index * spec.nodes()[p].alphabet.size() +
            static_cast<std::size_t>(state[p]);
  }
  return index;
}

}  // namespace

Dataset sample_bayes_net(const BayesNetSpec& spec, std::int64_t n, std::uint64_t seed) {
  if (n < 1) {
    throw std::invalid_argument("sample_bayes_net: n must be >= 1");
  }
  const auto& nodes = spec.nodes();
  Rng rng(seed);

  std::vector<std::int32_t> cells;
  cells.reserve(static_cast<std::size_t>(n) * nodes.size());
  std::vector<std::int32_t> state(nodes.size(), 0);

  for (std::int64_t row = 0; row < n; ++row) {
    for (auto v : spec.topological_order()) {
      const auto& node = nodes[v];
      const std::size_t config = parent_config_index(spec, spec.parent_indices_[v], state);
      state[v] = static_cast<std::int32_t>(
          rng.categorical(node.cpt.row(static_cast<Eigen::Index>(config)).transpose()));
    }
    cells.insert(cells.end(), state.begin(), state.end());
  }

  std::vector<std::string> names;
  std::vector<Alphabet> alphabets;
  for (const auto& node : nodes) {
    names.push_back(node.name);
    alphabets.push_back(node.alphabet);
  }
  return Dataset(std::move(names), std::move(alphabets), std::move(cells));
}

JointDistribution exact_group_joint(const BayesNetSpec& spec,
                                    const std::vector<std::string>& group_a,
                                    const std::vector<std::string>& group_b,
                                    std::size_t state_budget) {
  const auto& nodes = spec.nodes();
  std::size_t total_states = 1;
  for (const auto& node : nodes) {
    total_states *= node.alphabet.size();
    if (total_states > state_budget) {
      throw std::invalid_argument("exact_group_joint: state space exceeds budget");
    }
  }
  if (group_a.empty() || group_b.empty()) {
    throw std::invalid_argument("exact_group_joint: empty variable group");
  }

  std::vector<std::size_t> idx_a, idx_b;
  std::vector<Alphabet> parts_a, parts_b;
  for (const auto& name : group_a) {
    idx_a.push_back(spec.node_index(name));
    parts_a.push_back(nodes[idx_a.back()].alphabet);
  }
  for (const auto& name : group_b) {
    idx_b.push_back(spec.node_index(name));
    parts_b.push_back(nodes[idx_b.back()].alphabet);
  }
  Alphabet alpha_a = product_alphabet(parts_a);
  Alphabet alpha_b = product_alphabet(parts_b);

  Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(alpha_a.size()),
                                                static_cast<Eigen::Index>(alpha_b.size()));

  std::vector<std::int32_t> state(nodes.size(), 0);
  std::vector<std::size_t> digits_a(idx_a.size()), digits_b(idx_b.size());
  while (true) {
    double probability = 1.0;
    for (auto v : spec.topological_order()) {
      const std::size_t config = parent_config_index(spec, spec.parent_indices_[v], state);
      probability *= nodes[v].cpt(static_cast<Eigen::Index>(config), state[v]);
      if (probability == 0.0) break;
    }
    if (probability > 0.0) {
      for (std::size_t i = 0; i < idx_a.size(); ++i) {
        digits_a[i] = static_cast<std::size_t>(state[idx_a[i]]);
      }
      for (std::size_t i = 0; i < idx_b.size(); ++i) {
        digits_b[i] = static_cast<std::size_t>(state[idx_b[i]]);
      }
      joint(static_cast<Eigen::Index>(product_index(parts_a, digits_a)),
            static_cast<Eigen::Index>(product_index(parts_b, digits_b))) += probability;
    }
    // Advance the mixed-radix state; last node fastest.
    std::size_t v = nodes.size();
    while (v > 0) {
      --v;
      if (static_cast<std::size_t>(++state[v]) < nodes[v].alphabet.size()) break;
      state[v] = 0;
      if (v == 0) return JointDistribution(std::move(alpha_a), std::move(alpha_b),
                                           std::move(joint));
    }
  }
}

JointDistribution exact_joint(const BayesNetSpec& spec, std::string_view var_x,
                              std::string_view var_y, std::size_t state_budget) {
  return exact_group_joint(spec, {std::string(var_x)}, {std::string(var_y)}, state_budget);
}

}  // namespace cskel
