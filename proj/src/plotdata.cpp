#include "gmrfinfo/plotdata.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gmrfinfo/error.hpp"

namespace gmrfinfo {

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", *d);
    return buf;
  }
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  return quote(std::get<std::string>(cell));
}

}  // namespace

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw DomainError("row has " + std::to_string(row.size()) + " cells for " +
                      std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

void emit_plotdata(const Table& table, std::ostream& out) {
  if (table.columns.empty()) throw DomainError("emit_plotdata: no columns");
  if (table.rows.empty()) throw DomainError("emit_plotdata: empty series");
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
      const auto* d = std::get_if<double>(&table.rows[r][c]);
      if (d != nullptr && !std::isfinite(*d)) {
        throw DomainError("non-finite value in row " + std::to_string(r + 1) + ", column '" +
                          table.columns[c] + "'");
      }
    }
  }
  std::ostringstream os;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    os << (c ? "," : "") << quote(table.columns[c]);
  }
  os << "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format(row[c]);
    os << "\r\n";
  }
  out << os.str();
  if (!out) throw std::runtime_error("emit_plotdata: write failed");
}

void emit_plotdata(const Table& table, const std::filesystem::path& path) {
  std::ostringstream buffer;
  emit_plotdata(table, buffer);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << buffer.str();
  if (!f) throw std::runtime_error("write to " + path.string() + " failed");
}

}  // namespace gmrfinfo
