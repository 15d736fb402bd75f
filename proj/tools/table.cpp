// Copyright (c) 2026 The Halfline Developers.
// SPDX-License-Identifier: Apache-2.0
#include "table.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace halfline::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_cell(const Cell& cell) {
  switch (cell.index()) {
    case 0:
      return {};
    case 1:
      return format_double(std::get<double>(cell));
    case 2: {
      char buf[24];
      const auto res = std::to_chars(buf, buf + sizeof(buf), std::get<long long>(cell));
      return std::string(buf, res.ptr);
    }
    default:
      return std::get<std::string>(cell);
  }
}

std::string emit_csv(const Table& table) {
  std::string out;
  for (std::size_t j = 0; j < table.columns.size(); ++j) {
    if (j > 0) out += ',';
    out += table.columns[j];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::invalid_argument("emit_csv: row width does not match the header");
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j > 0) out += ',';
      out += format_cell(row[j]);
    }
    out += '\n';
  }
  return out;
}

namespace {

Cell classify(const std::string& field) {
  if (field.empty()) return std::monostate{};
  const char* first = field.data();
  const char* last = first + field.size();
  long long i = 0;
  if (auto [p, ec] = std::from_chars(first, last, i); ec == std::errc{} && p == last) {
    return i;
  }
  double d = 0.0;
  if (auto [p, ec] = std::from_chars(first, last, d); ec == std::errc{} && p == last) {
    return d;
  }
  return field;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

Table parse_csv(const std::string& text) {
  Table table;
  std::size_t start = 0;
  bool header = true;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(start, end - start);
    start = end + 1;
    if (header) {
      table.columns = split(line, ',');
      header = false;
      continue;
    }
    auto fields = split(line, ',');
    if (fields.size() != table.columns.size()) {
      throw std::invalid_argument("parse_csv: row width does not match the header");
    }
    std::vector<Cell> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(classify(f));
    table.rows.push_back(std::move(row));
  }
  if (header) throw std::invalid_argument("parse_csv: missing header line");
  return table;
}

std::string emit_json(const Table& table, const nlohmann::ordered_json& metadata) {
  nlohmann::ordered_json doc;
  doc["columns"] = table.columns;
  auto& rows = doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::invalid_argument("emit_json: row width does not match the header");
    }
    nlohmann::ordered_json jrow = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      switch (cell.index()) {
        case 0:
          jrow.push_back(nullptr);
          break;
        case 1: {
          const double d = std::get<double>(cell);
          if (std::isfinite(d)) {
            jrow.push_back(d);
          } else {
            jrow.push_back(format_double(d));  // json has no inf/nan literals
          }
          break;
        }
        case 2:
          jrow.push_back(std::get<long long>(cell));
          break;
        default:
          jrow.push_back(std::get<std::string>(cell));
      }
    }
    rows.push_back(std::move(jrow));
  }
  doc["metadata"] = metadata;
  return doc.dump(2) + "\n";
}

}  // namespace halfline::cli
