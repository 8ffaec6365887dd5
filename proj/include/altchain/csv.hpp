// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace altchain {

/// Column-major numeric table; every row has columns.size() entries.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
};

/// Writes with 17 significant digits. NaN or infinite entries throw IoError
/// (results must be finite); an empty table writes the header only.
void write_csv(const std::string& path, const Table& table);

Table read_csv(const std::string& path);

}  // namespace altchain
