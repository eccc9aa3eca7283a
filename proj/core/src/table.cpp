#include "asymphot/table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "asymphot/errors.hpp"

namespace asymphot::cli {

void OutputTable::add_row(std::vector<std::optional<double>> row) {
  if (row.size() != columns.size()) {
    throw std::invalid_argument("row arity " + std::to_string(row.size()) + " != " +
                                std::to_string(columns.size()) + " columns in " + name);
  }
  rows.push_back(std::move(row));
}

std::vector<std::optional<double>> OutputTable::column(std::size_t index) const {
  std::vector<std::optional<double>> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row.at(index));
  return out;
}

std::size_t OutputTable::column_index(const std::string& column_name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == column_name) return i;
  }
  throw std::out_of_range("no column '" + column_name + "' in table " + name);
}

std::string format_number(double value) {
  char buf[48];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, 11);
  return std::string(buf, res.ptr);
}

std::string format_shortest(double value) {
  char buf[48];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string format_csv(const OutputTable& table) {
  std::string out;
  for (const auto& line : table.metadata) {
    out += "# ";
    out += line;
    out += '\n';
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (row[i] && std::isfinite(*row[i])) out += format_number(*row[i]);
    }
    out += '\n';
  }
  return out;
}

void emit_csv(const OutputTable& table, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path.string() + "' for writing");
  const std::string text = format_csv(table);
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  file.flush();
  if (!file) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace asymphot::cli
