#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cskel {

/// Ordered set of category labels. The order is fixed at construction and
/// defines the index space used by every probability container.
class Alphabet {
 public:
  Alphabet() = default;

  /// Keeps the given order. Throws std::invalid_argument on duplicates or an
  /// empty list.
  explicit Alphabet(std::vector<std::string> symbols);

  /// Builds an alphabet from observed values: distinct labels, sorted
  /// lexicographically.
  static Alphabet inferred(std::vector<std::string> observed);

  std::size_t size() const { return symbols_.size(); }
  const std::string& label(std::size_t index) const { return symbols_.at(index); }
  const std::vector<std::string>& labels() const { return symbols_; }

  std::optional<std::size_t> find(std::string_view label) const;
  std::size_t index_of(std::string_view label) const;  // throws on unknown label

  bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Cartesian product alphabet, labels joined with '|'. Index layout is
/// row-major: the first part varies slowest.
Alphabet product_alphabet(const std::vector<Alphabet>& parts);

/// Mixed-radix index into a product alphabet (first part slowest).
std::size_t product_index(const std::vector<Alphabet>& parts,
                          const std::vector<std::size_t>& digits);

}  // namespace cskel
