// Copyright (c) 2026 The Halfline Developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace halfline::cli {

/// One table cell: empty, floating, integer, or text.
using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Shortest representation that parses back to the same double. Infinities
/// print as "inf"/"-inf" and NaN as "nan", matching what parsing accepts.
std::string format_double(double v);

std::string format_cell(const Cell& cell);

/// Header line plus one line per row, comma separated, '\n' endings. Cell
/// text must not contain commas or newlines; there is no quoting.
std::string emit_csv(const Table& table);

/// Inverse of emit_csv up to cell classification: empty fields become empty
/// cells, integer-looking fields integers, numeric fields doubles (inf/nan
/// included), everything else text. Re-emitting reproduces the input bytes.
Table parse_csv(const std::string& text);

/// The same table as JSON, with a caller-supplied metadata object. Doubles
/// stay numbers except non-finite ones, which mirror the CSV spelling as
/// strings.
std::string emit_json(const Table& table, const nlohmann::ordered_json& metadata);

}  // namespace halfline::cli
