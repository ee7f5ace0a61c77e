#include "cskel/csv.hpp"

#include <algorithm>
#include <fstream>

#include "cskel/errors.hpp"

namespace cskel {

namespace {

std::vector<std::string> split_record(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == delimiter) {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string escape_field(const std::string& value, char delimiter) {
  const bool needs_quotes = value.find(delimiter) != std::string::npos ||
                            value.find('"') != std::string::npos ||
                            value.find('\n') != std::string::npos;
  if (!needs_quotes) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("load_csv: cannot open '" + path.string() + "'");
  }

  std::vector<std::vector<std::string>> records;
  std::string line;
  std::size_t line_number = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_record(line, options.delimiter);
    if (width == 0) {
      width = fields.size();
    } else if (fields.size() != width) {
      throw std::invalid_argument("load_csv: ragged row at line " +
                                  std::to_string(line_number));
    }
    records.push_back(std::move(fields));
  }
  if (records.empty()) {
    throw std::invalid_argument("load_csv: empty dataset in '" + path.string() + "'");
  }

  std::vector<std::string> names;
  std::size_t first_data_row = 0;
  if (options.has_header) {
    names = records.front();
    first_data_row = 1;
  } else {
    for (std::size_t i = 0; i < width; ++i) names.push_back("c" + std::to_string(i));
  }
  if (first_data_row >= records.size()) {
    throw std::invalid_argument("load_csv: empty dataset (header only)");
  }

  // Column selection, kept in file order.
  std::vector<std::size_t> selected;
  if (options.columns.empty()) {
    for (std::size_t i = 0; i < width; ++i) selected.push_back(i);
  } else {
    for (std::size_t i = 0; i < width; ++i) {
      if (std::find(options.columns.begin(), options.columns.end(), names[i]) !=
          options.columns.end()) {
        selected.push_back(i);
      }
    }
    if (selected.size() != options.columns.size()) {
      for (const auto& wanted : options.columns) {
        if (std::find(names.begin(), names.end(), wanted) == names.end()) {
          throw std::invalid_argument("load_csv: unknown column '" + wanted + "'");
        }
      }
      throw std::invalid_argument("load_csv: duplicate column selection");
    }
  }

  const std::size_t n_vars = selected.size();
  const std::size_t n_rows = records.size() - first_data_row;

  std::vector<Alphabet> alphabets;
  alphabets.reserve(n_vars);
  for (std::size_t v = 0; v < n_vars; ++v) {
    std::vector<std::string> observed;
    observed.reserve(n_rows);
    for (std::size_t r = first_data_row; r < records.size(); ++r) {
      observed.push_back(records[r][selected[v]]);
    }
    Alphabet alphabet = Alphabet::inferred(std::move(observed));
    if (alphabet.size() > options.max_cardinality) {
      throw std::invalid_argument("load_csv: column '" + names[selected[v]] + "' has " +
                                  std::to_string(alphabet.size()) +
                                  " distinct values (cap " +
                                  std::to_string(options.max_cardinality) + ")");
    }
    alphabets.push_back(std::move(alphabet));
  }

  std::vector<std::int32_t> cells;
  cells.reserve(n_rows * n_vars);
  for (std::size_t r = first_data_row; r < records.size(); ++r) {
    for (std::size_t v = 0; v < n_vars; ++v) {
      cells.push_back(
          static_cast<std::int32_t>(alphabets[v].index_of(records[r][selected[v]])));
    }
  }

  std::vector<std::string> selected_names;
  for (auto i : selected) selected_names.push_back(names[i]);
  return Dataset(std::move(selected_names), std::move(alphabets), std::move(cells));
}

void save_csv(const Dataset& dataset, const std::filesystem::path& path, char delimiter) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("save_csv: cannot write '" + path.string() + "'");
  }
  const std::size_t n_vars = dataset.variable_count();
  for (std::size_t v = 0; v < n_vars; ++v) {
    if (v) out << delimiter;
    out << escape_field(dataset.variable_names()[v], delimiter);
  }
  out << '\n';
  for (std::int64_t row = 0; row < dataset.sample_count(); ++row) {
    for (std::size_t v = 0; v < n_vars; ++v) {
      if (v) out << delimiter;
      out << escape_field(dataset.alphabet(v).label(
                              static_cast<std::size_t>(dataset.cell(row, v))),
                          delimiter);
    }
    out << '\n';
  }
  if (!out) {
    throw IoError("save_csv: write failed for '" + path.string() + "'");
  }
}

}  // namespace cskel
