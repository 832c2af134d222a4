#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace wavekit::app {

/// 15 significant digits, '.' separator, locale independent.
std::string format_number(double value);

using Cell = std::variant<std::string, double>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

enum class OutputFormat { Csv, Json };

/// Header row plus one newline-terminated line per row.
void write_csv(const Table& table, std::ostream& out);
/// {"command": ..., "columns": [...], "rows": [{...}, ...]}; empty cells are
/// null and numbers carry the same 15-digit values as the CSV form.
void write_json(const Table& table, const std::string& command, std::ostream& out);

void write_table(const Table& table, const std::string& command, OutputFormat format,
                 std::ostream& out);

}  // namespace wavekit::app
