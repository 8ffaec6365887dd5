// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "altchain/types.hpp"

namespace altchain {

enum class Experiment { kDispersion, kEpScan, kScaling, kEdge, kDeform, kWalk, kWinding };

std::string_view to_string(Experiment e);

/// Alternation h as a fixed value or c * N^e ("0.3", "N^-0.25", "20/N", "2*N^-0.5").
struct HSpec {
  double coefficient = 0;
  double exponent = 0;  // 0 for a fixed value
  std::string text;

  static HSpec parse(const std::string& text);
  double resolve(int n_sites) const;
  /// alpha of h = N^-alpha when the spec has that exact form.
  std::optional<double> alpha() const;
};

struct ExperimentConfig {
  Experiment experiment = Experiment::kDispersion;
  std::string name;  // defaults to the config file stem
  int n_sites = 100;
  std::vector<int> n_sites_list;
  double spacing = kPi / 2;
  double theta = DipoleOrientation::magic().theta;
  HSpec h = HSpec::parse("0");
  double tolerance = 1e-8;

  // dispersion
  int k_points = 256;
  // ep-scan
  double h_start = 0.0, h_stop = 1.0, h_step = 0.005;
  // scaling: "subradiance" or "edge-ep"
  std::string scaling_mode = "subradiance";
  // deform
  std::vector<double> lambda_grid{0.0, 0.25, 0.5, 0.75};
  double lambda_step = 0.05;
  // walk
  double t_max = 1000.0;
  double dt = 0.01;
  double start_time = 5.0;
  bool onsite_decay = true;
  double density_t_stop = 30.0;
  double density_t_step = 0.5;
  // winding: "short-range" or "long-range"
  std::string winding_model = "short-range";
  double winding_g = 1.0;
  int winding_intervals = 512;

  std::string output_path = "out";
  bool deterministic = true;

  ChainGeometry geometry() const { return {n_sites, spacing}; }
  DipoleOrientation orientation() const { return {theta}; }
  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Parses YAML text; `source` names the origin in error messages.
ExperimentConfig parse_config(const std::string& yaml_text, const std::string& source = "<string>",
                              const std::vector<std::string>& overrides = {});

/// Reads, applies `key=value` overrides (values are YAML scalars or flow
/// sequences), fills defaults and validates. Parse errors carry the line number.
ExperimentConfig read_config(const std::string& path, const std::vector<std::string>& overrides = {});

/// Canonical YAML rendering of every field (used as the config echo).
std::string to_yaml(const ExperimentConfig& config);

}  // namespace altchain
