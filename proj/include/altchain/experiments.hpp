// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "altchain/config.hpp"
#include "altchain/csv.hpp"

namespace altchain {

std::string_view library_version();

/// Tables plus the metadata written to the JSON sidecar. Tables depend only
/// on the config; wall time is metadata.
struct ResultBundle {
  std::string experiment;
  std::string name;
  std::string config_yaml;
  double wall_time_s = 0;
  std::vector<std::pair<std::string, double>> scalars;
  std::vector<std::pair<std::string, std::string>> notes;
  std::map<std::string, Table> tables;

  const Table& table(const std::string& key) const;
  double scalar(const std::string& key) const;
};

/// Dispatches to the owning module. Module errors are rethrown with the
/// experiment name prepended and their class preserved.
ResultBundle run_experiment(const ExperimentConfig& config);

/// Writes <dir>/<table>.csv for every table and <dir>/metadata.json.
void write_bundle(const ResultBundle& bundle, const std::string& directory);

}  // namespace altchain
