#pragma once

#include <cstdio>
#include <string>
#include <variant>
#include <vector>

#include "catlab/errors.hpp"

namespace catlab::harness {

/// Shortest-safe textual form of a double: 17 significant digits, so every
/// value reads back bit-exactly.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

using CsvCell = std::variant<double, long long, std::string>;

/// In-memory CSV table with a fixed header. Content is assembled as a
/// string so that it can be checksummed before it touches the disk.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : columns_(header.size()) {
    if (header.empty()) throw ConfigError("CSV table needs at least one column");
    append_line(header);
  }

  void add_row(const std::vector<CsvCell>& row) {
    if (row.size() != columns_) {
      throw DimensionMismatch("CSV row has " + std::to_string(row.size()) + " cells, expected " +
                              std::to_string(columns_));
    }
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (const auto& c : row) {
      if (const double* d = std::get_if<double>(&c)) {
        cells.push_back(format_double(*d));
      } else if (const long long* i = std::get_if<long long>(&c)) {
        cells.push_back(std::to_string(*i));
      } else {
        cells.push_back(std::get<std::string>(c));
      }
    }
    append_line(cells);
    ++rows_;
  }

  std::size_t rows() const { return rows_; }
  const std::string& text() const { return text_; }

 private:
  void append_line(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) text_ += ',';
      text_ += cells[i];
    }
    text_ += '\n';
  }

  std::size_t columns_;
  std::size_t rows_ = 0;
  std::string text_;
};

}  // namespace catlab::harness
