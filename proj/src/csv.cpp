// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

#include "altchain/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "altchain/errors.hpp"

namespace altchain {

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) throw IoError("table row has the wrong number of columns");
  rows.push_back(std::move(row));
}

void write_csv(const std::string& path, const Table& table) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  char buffer[32];
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.size() != table.columns.size()) throw IoError(path + ": row " + std::to_string(r) + " has the wrong width");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!std::isfinite(row[c])) {
        throw IoError(path + ": non-finite value in column '" + table.columns[c] + "', row " + std::to_string(r));
      }
      std::snprintf(buffer, sizeof buffer, "%.17g", row[c]);
      out << (c ? "," : "") << buffer;
    }
    out << '\n';
  }
  if (!out) throw IoError("write to '" + path + "' failed");
}

Table read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  Table t;
  std::string line, cell;
  if (!std::getline(in, line)) throw IoError(path + ": empty file");
  std::stringstream header(line);
  while (std::getline(header, cell, ',')) t.columns.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw IoError(path + ": cannot parse '" + cell + "'");
      }
    }
    if (row.size() != t.columns.size()) throw IoError(path + ": ragged row");
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace altchain
