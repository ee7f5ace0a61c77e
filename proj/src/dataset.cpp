#include "cskel/dataset.hpp"

#include <stdexcept>

namespace cskel {

Dataset::Dataset(std::vector<std::string> names, std::vector<Alphabet> alphabets,
                 std::vector<std::int32_t> cells)
    : names_(std::move(names)), alphabets_(std::move(alphabets)), cells_(std::move(cells)) {
  if (names_.empty()) {
    throw std::invalid_argument("Dataset: needs at least one variable");
  }
  if (names_.size() != alphabets_.size()) {
    throw std::invalid_argument("Dataset: names/alphabets size mismatch");
  }
  if (cells_.empty() || cells_.size() % names_.size() != 0) {
    throw std::invalid_argument("Dataset: cell table is not rectangular");
  }
  sample_count_ = static_cast<std::int64_t>(cells_.size() / names_.size());
  for (std::int64_t row = 0; row < sample_count_; ++row) {
    for (std::size_t v = 0; v < names_.size(); ++v) {
      const auto value = cell(row, v);
      if (value < 0 || static_cast<std::size_t>(value) >= alphabets_[v].size()) {
        throw std::invalid_argument("Dataset: cell index out of range for variable '" +
                                    names_[v] + "'");
      }
    }
  }
}

std::size_t Dataset::variable_index(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  throw std::invalid_argument("Dataset: unknown variable '" + std::string(name) + "'");
}

bool Dataset::has_variable(std::string_view name) const {
  for (const auto& n : names_) {
    if (n == name) return true;
  }
  return false;
}

JointDistribution estimate_joint(const Dataset& dataset, std::string_view var_x,
                                 std::string_view var_y) {
  const std::size_t ix = dataset.variable_index(var_x);
  const std::size_t iy = dataset.variable_index(var_y);
  const auto& ax = dataset.alphabet(ix);
  const auto& ay = dataset.alphabet(iy);

  CountMatrix counts = CountMatrix::Zero(static_cast<Eigen::Index>(ax.size()),
                                         static_cast<Eigen::Index>(ay.size()));
  for (std::int64_t row = 0; row < dataset.sample_count(); ++row) {
    counts(dataset.cell(row, ix), dataset.cell(row, iy)) += 1;
  }
  return JointDistribution(ax, ay, std::move(counts));
}

namespace {

std::vector<std::size_t> resolve_group(const Dataset& dataset,
                                       const std::vector<std::string>& group) {
  if (group.empty()) {
    throw std::invalid_argument("estimate_group_joint: empty variable group");
  }
  std::vector<std::size_t> indices;
  indices.reserve(group.size());
  for (const auto& name : group) {
    indices.push_back(dataset.variable_index(name));
  }
  return indices;
}

}  // namespace

JointDistribution estimate_group_joint(const Dataset& dataset,
                                       const std::vector<std::string>& group_a,
                                       const std::vector<std::string>& group_b) {
  const auto idx_a = resolve_group(dataset, group_a);
  const auto idx_b = resolve_group(dataset, group_b);

  std::vector<Alphabet> parts_a, parts_b;
  for (auto i : idx_a) parts_a.push_back(dataset.alphabet(i));
  for (auto i : idx_b) parts_b.push_back(dataset.alphabet(i));
  Alphabet alpha_a = product_alphabet(parts_a);
  Alphabet alpha_b = product_alphabet(parts_b);

  CountMatrix counts = CountMatrix::Zero(static_cast<Eigen::Index>(alpha_a.size()),
                                         static_cast<Eigen::Index>(alpha_b.size()));
  std::vector<std::size_t> digits_a(idx_a.size()), digits_b(idx_b.size());
  for (std::int64_t row = 0; row < dataset.sample_count(); ++row) {
    for (std::size_t i = 0; i < idx_a.size(); ++i) {
      digits_a[i] = static_cast<std::size_t>(dataset.cell(row, idx_a[i]));
    }
    for (std::size_t i = 0; i < idx_b.size(); ++i) {
      digits_b[i] = static_cast<std::size_t>(dataset.cell(row, idx_b[i]));
    }
    counts(static_cast<Eigen::Index>(product_index(parts_a, digits_a)),
           static_cast<Eigen::Index>(product_index(parts_b, digits_b))) += 1;
  }
  return JointDistribution(std::move(alpha_a), std::move(alpha_b), std::move(counts));
}

}  // namespace cskel
