#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cskel/dataset.hpp"

namespace cskel {

struct CsvOptions {
  char delimiter = ',';
  bool has_header = true;
  /// When non-empty, load only these columns (kept in file order).
  std::vector<std::string> columns;
  /// Distinct-value cap per column; exceeding it is an error naming the column.
  std::size_t max_cardinality = 64;
};

/// Loads a UTF-8 delimited file into a Dataset. Cells are category labels;
/// alphabets are the distinct observed values in lexicographic order.
/// Without a header row, columns are named c0, c1, ...
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// Writes header + label cells; inverse of load_csv for round-tripping.
void save_csv(const Dataset& dataset, const std::filesystem::path& path,
              char delimiter = ',');

}  // namespace cskel
