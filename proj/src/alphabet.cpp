#include "cskel/alphabet.hpp"

#include <algorithm>
#include <stdexcept>

namespace cskel {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) {
    throw std::invalid_argument("Alphabet: needs at least one symbol");
  }
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    auto [it, inserted] = index_.emplace(symbols_[i], i);
    if (!inserted) {
      throw std::invalid_argument("Alphabet: duplicate symbol '" + symbols_[i] + "'");
    }
  }
}

Alphabet Alphabet::inferred(std::vector<std::string> observed) {
  std::sort(observed.begin(), observed.end());
  observed.erase(std::unique(observed.begin(), observed.end()), observed.end());
  return Alphabet(std::move(observed));
}

std::optional<std::size_t> Alphabet::find(std::string_view label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Alphabet::index_of(std::string_view label) const {
  auto pos = find(label);
  if (!pos) {
    throw std::invalid_argument("Alphabet: unknown symbol '" + std::string(label) + "'");
  }
  return *pos;
}

Alphabet product_alphabet(const std::vector<Alphabet>& parts) {
  if (parts.empty()) {
    throw std::invalid_argument("product_alphabet: needs at least one part");
  }
  std::vector<std::string> labels{""};
  for (const auto& part : parts) {
    std::vector<std::string> next;
    next.reserve(labels.size() * part.size());
    for (const auto& prefix : labels) {
      for (const auto& symbol : part.labels()) {
        next.push_back(prefix.empty() ? symbol : prefix + "|" + symbol);
      }
    }
    labels = std::move(next);
  }
  return Alphabet(std::move(labels));
}

std::size_t product_index(const std::vector<Alphabet>& parts,
                          const std::vector<std::size_t>& digits) {
  if (parts.size() != digits.size()) {
    throw std::invalid_argument("product_index: parts/digits size mismatch");
  }
  std::size_t index = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (digits[i] >= parts[i].size()) {
      throw std::invalid_argument("product_index: digit out of range");
    }
    index = index * parts[i].size() + digits[i];
  }
  return index;
}

}  // namespace cskel
