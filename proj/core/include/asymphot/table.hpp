#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace asymphot::cli {

/// Row-major numeric table plus free-form metadata lines. Missing entries
/// (singular grid points) are std::nullopt and are written as empty fields.
struct OutputTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;
  std::vector<std::string> metadata;

  /// Throws std::invalid_argument when a row's arity differs from the header.
  void add_row(std::vector<std::optional<double>> row);
  std::vector<std::optional<double>> column(std::size_t index) const;
  std::size_t column_index(const std::string& name) const;
};

/// 12 significant digits in scientific notation, independent of the C locale.
std::string format_number(double value);

/// Shortest text that parses back to the same double.
std::string format_shortest(double value);

/// CSV text: `# ` metadata lines, the header, then rows; `,` separators, `\n` endings.
/// NaN and infinities are written as empty fields.
std::string format_csv(const OutputTable& table);

/// Writes format_csv(table) to `path`. Throws IoError when the file cannot be written.
void emit_csv(const OutputTable& table, const std::filesystem::path& path);

}  // namespace asymphot::cli
