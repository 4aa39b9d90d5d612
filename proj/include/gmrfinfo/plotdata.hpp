#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace gmrfinfo {

using Cell = std::variant<double, std::int64_t, std::string>;

/// Column-named rows destined for a CSV file.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

/// RFC 4180 CSV: header row, then one line per row in insertion order, reals
/// with 12 significant digits, CRLF line ends. Throws DomainError naming the
/// row and column of any non-finite value, before anything is written.
void emit_plotdata(const Table& table, std::ostream& out);
void emit_plotdata(const Table& table, const std::filesystem::path& path);

}  // namespace gmrfinfo
