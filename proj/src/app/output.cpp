#include "wavekit/app/output.hpp"

#include <cmath>
#include <cstdlib>
#include <json.hpp>
#include <stdexcept>

#include <fmt/format.h>

namespace wavekit::app {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // folds -0
  return fmt::format("{:.15g}", value);
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("table row width does not match the header");
  }
  rows.push_back(std::move(row));
}

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  return format_number(std::get<double>(c));
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << csv_escape(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << csv_escape(cell_text(row[i]));
    }
    out << '\n';
  }
}

void write_json(const Table& table, const std::string& command, std::ostream& out) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["command"] = command;
  doc["columns"] = table.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& c = row[i];
      if (const auto* s = std::get_if<std::string>(&c)) {
        // Empty cells mark values the run did not produce.
        obj[table.columns[i]] = s->empty() ? ordered_json(nullptr) : ordered_json(*s);
        continue;
      }
      const double v = std::get<double>(c);
      if (!std::isfinite(v)) {
        obj[table.columns[i]] = format_number(v);
      } else {
        // Round-trip through the CSV text so both forms carry one value.
        obj[table.columns[i]] = std::strtod(format_number(v).c_str(), nullptr);
      }
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

void write_table(const Table& table, const std::string& command, OutputFormat format,
                 std::ostream& out) {
  if (format == OutputFormat::Csv) {
    write_csv(table, out);
  } else {
    write_json(table, command, out);
  }
}

}  // namespace wavekit::app
