#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cskel/alphabet.hpp"
#include "cskel/joint.hpp"

namespace cskel {

/// Table of discrete samples: one column per variable, cells are indices
/// into the per-variable alphabet.
class Dataset {
 public:
  Dataset(std::vector<std::string> names, std::vector<Alphabet> alphabets,
          std::vector<std::int32_t> cells /* row-major */);

  std::size_t variable_count() const { return names_.size(); }
  std::int64_t sample_count() const { return sample_count_; }
  const std::vector<std::string>& variable_names() const { return names_; }
  std::size_t variable_index(std::string_view name) const;  // throws on unknown
  bool has_variable(std::string_view name) const;
  const Alphabet& alphabet(std::size_t variable) const { return alphabets_.at(variable); }

  std::int32_t cell(std::int64_t row, std::size_t variable) const {
    return cells_[static_cast<std::size_t>(row) * names_.size() + variable];
  }

 private:
  std::vector<std::string> names_;
  std::vector<Alphabet> alphabets_;
  std::vector<std::int32_t> cells_;
  std::int64_t sample_count_ = 0;
};

/// Empirical joint of two variables by exact co-occurrence counting.
/// var_x == var_y produces the diagonal joint carrying the marginal.
JointDistribution estimate_joint(const Dataset& dataset, std::string_view var_x,
                                 std::string_view var_y);

/// Empirical joint of two disjoint variable groups over their product
/// alphabets (row-major, first listed variable slowest).
JointDistribution estimate_group_joint(const Dataset& dataset,
                                       const std::vector<std::string>& group_a,
                                       const std::vector<std::string>& group_b);

}  // namespace cskel
