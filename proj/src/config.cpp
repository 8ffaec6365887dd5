// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

#include "altchain/config.hpp"

#include <array>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace altchain {
namespace {

constexpr std::array<std::pair<Experiment, std::string_view>, 7> kExperimentNames{{
    {Experiment::kDispersion, "dispersion"},
    {Experiment::kEpScan, "ep-scan"},
    {Experiment::kScaling, "scaling"},
    {Experiment::kEdge, "edge"},
    {Experiment::kDeform, "deform"},
    {Experiment::kWalk, "walk"},
    {Experiment::kWinding, "winding"},
}};

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "experiment", "name", "n_sites", "n_sites_list", "spacing", "theta", "h", "tolerance",
      "k_points", "h_start", "h_stop", "h_step", "scaling_mode", "lambda_grid", "lambda_step",
      "t_max", "dt", "start_time", "onsite_decay", "density_t_stop", "density_t_step",
      "winding_model", "winding_g", "winding_intervals", "output_path", "deterministic"};
  return keys;
}

std::string where(const YAML::Node& node, const std::string& source) {
  const YAML::Mark mark = node.Mark();
  if (mark.line < 0) return source;
  return source + ":" + std::to_string(mark.line + 1);
}

template <typename T>
T get(const YAML::Node& root, const std::string& key, const T& fallback, const std::string& source) {
  const YAML::Node node = root[key];
  if (!node) return fallback;
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(where(node, source) + ": field '" + key + "' has the wrong type");
  }
}

// Number, "pi", "pi/2", "0.5*pi".
double parse_angle_like(const YAML::Node& node, const std::string& key, const std::string& source) {
  const std::string text = node.as<std::string>();
  static const std::regex pi_form(R"(^\s*(?:([0-9.eE+-]+)\s*\*\s*)?pi\s*(?:/\s*([0-9.eE+-]+))?\s*$)");
  std::smatch m;
  try {
    if (std::regex_match(text, m, pi_form)) {
      const double c = m[1].matched ? std::stod(m[1].str()) : 1.0;
      const double div = m[2].matched ? std::stod(m[2].str()) : 1.0;
      return c * kPi / div;
    }
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(where(node, source) + ": field '" + key + "' must be a number or a multiple of pi, got '" + text + "'");
}

void apply_override(YAML::Node& root, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + assignment + "' is not of the form key=value");
  const std::string key = assignment.substr(0, eq);
  if (!known_keys().contains(key)) throw ConfigError("override names unknown field '" + key + "'");
  try {
    root[key] = YAML::Load(assignment.substr(eq + 1));
  } catch (const YAML::ParserException& e) {
    throw ConfigError("override for field '" + key + "' is not valid YAML: " + e.msg);
  }
}

void require(bool ok, const std::string& field, const std::string& message) {
  if (!ok) throw ConfigError("field '" + field + "': " + message);
}

}  // namespace

std::string_view to_string(Experiment e) {
  for (const auto& [value, name] : kExperimentNames) {
    if (value == e) return name;
  }
  return "unknown";
}

HSpec HSpec::parse(const std::string& text) {
  static const std::regex power(R"(^\s*(?:([0-9.eE+-]+)\s*\*\s*)?N\s*\^\s*\(?\s*([-+]?[0-9.eE+-]+)\s*\)?\s*$)");
  static const std::regex inverse(R"(^\s*([0-9.eE+-]+)\s*/\s*N\s*$)");
  HSpec spec;
  spec.text = text;
  std::smatch m;
  try {
    if (std::regex_match(text, m, power)) {
      spec.coefficient = m[1].matched ? std::stod(m[1].str()) : 1.0;
      spec.exponent = std::stod(m[2].str());
      return spec;
    }
    if (std::regex_match(text, m, inverse)) {
      spec.coefficient = std::stod(m[1].str());
      spec.exponent = -1.0;
      return spec;
    }
    std::size_t used = 0;
    spec.coefficient = std::stod(text, &used);
    if (text.find_first_not_of(" \t", used) == std::string::npos) return spec;
  } catch (const std::exception&) {
  }
  throw ConfigError("field 'h': cannot parse '" + text + "' (expected a number, N^e, c*N^e or c/N)");
}

double HSpec::resolve(int n_sites) const {
  if (exponent == 0.0) return coefficient;
  return coefficient * std::pow(static_cast<double>(n_sites), exponent);
}

std::optional<double> HSpec::alpha() const {
  if (exponent != 0.0 && coefficient == 1.0) return -exponent;
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  require(n_sites >= 2, "n_sites", "must be at least 2");
  for (int n : n_sites_list) require(n >= 2, "n_sites_list", "entries must be at least 2");
  require(spacing > 0.0 && std::isfinite(spacing), "spacing", "must be positive");
  require(theta >= 0.0 && theta <= kPi / 2 + 1e-15, "theta", "must lie in [0, pi/2]");
  require(h.resolve(std::max(n_sites, 2)) >= 0.0, "h", "must be non-negative");
  require(tolerance > 0.0, "tolerance", "must be positive");
  require(k_points >= 2, "k_points", "must be at least 2");
  require(h_step > 0.0 && h_stop >= h_start && h_start >= 0.0, "h_step", "need 0 <= h_start <= h_stop and h_step > 0");
  require(scaling_mode == "subradiance" || scaling_mode == "edge-ep", "scaling_mode", "must be 'subradiance' or 'edge-ep'");
  for (double l : lambda_grid) require(l >= 0.0 && l <= 1.0, "lambda_grid", "entries must lie in [0, 1]");
  require(std::is_sorted(lambda_grid.begin(), lambda_grid.end()), "lambda_grid", "must ascend");
  require(lambda_step > 0.0, "lambda_step", "must be positive");
  require(dt > 0.0, "dt", "must be positive");
  require(t_max > 0.0, "t_max", "must be positive");
  require(start_time >= 0.0 && start_time < t_max, "start_time", "must lie in [0, t_max)");
  require(density_t_step > 0.0 && density_t_stop >= 0.0, "density_t_step", "need density_t_step > 0 and density_t_stop >= 0");
  require(winding_model == "short-range" || winding_model == "long-range", "winding_model",
          "must be 'short-range' or 'long-range'");
  require(winding_intervals >= 8, "winding_intervals", "must be at least 8");
  require(!output_path.empty(), "output_path", "must not be empty");
  const bool two_band = experiment != Experiment::kDispersion && experiment != Experiment::kWinding;
  if (two_band && experiment != Experiment::kScaling) require(n_sites % 2 == 0, "n_sites", "must be even");
  if (experiment == Experiment::kScaling) {
    require(n_sites_list.size() >= 3, "n_sites_list", "scaling needs at least three sizes");
    for (int n : n_sites_list) require(n % 2 == 0, "n_sites_list", "entries must be even");
    require(std::is_sorted(n_sites_list.begin(), n_sites_list.end()), "n_sites_list", "must ascend");
  }
}

ExperimentConfig parse_config(const std::string& yaml_text, const std::string& source,
                              const std::vector<std::string>& overrides) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ": parse error: " + e.msg);
  }
  if (!root || root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  if (!root.IsMap()) throw ConfigError(source + ": top level must be a mapping");
  for (const auto& o : overrides) apply_override(root, o);

  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    if (!known_keys().contains(key)) throw ConfigError(where(kv.first, source) + ": unknown field '" + key + "'");
  }

  ExperimentConfig c;
  const YAML::Node exp = root["experiment"];
  if (!exp) throw ConfigError(source + ": field 'experiment' is required");
  const std::string name = get<std::string>(root, "experiment", "", source);
  bool found = false;
  for (const auto& [value, text] : kExperimentNames) {
    if (text == name) {
      c.experiment = value;
      found = true;
    }
  }
  if (!found) throw ConfigError(where(exp, source) + ": field 'experiment': unknown experiment '" + name + "'");

  c.name = get<std::string>(root, "name", std::filesystem::path(source).stem().string(), source);
  c.n_sites = get<int>(root, "n_sites", c.n_sites, source);
  c.n_sites_list = get<std::vector<int>>(root, "n_sites_list", c.n_sites_list, source);
  if (root["spacing"]) c.spacing = parse_angle_like(root["spacing"], "spacing", source);
  if (root["theta"]) {
    const std::string t = root["theta"].as<std::string>();
    c.theta = t == "magic" ? DipoleOrientation::magic().theta : parse_angle_like(root["theta"], "theta", source);
  }
  if (root["h"]) c.h = HSpec::parse(root["h"].as<std::string>());
  c.tolerance = get<double>(root, "tolerance", c.tolerance, source);
  c.k_points = get<int>(root, "k_points", c.k_points, source);
  c.h_start = get<double>(root, "h_start", c.h_start, source);
  c.h_stop = get<double>(root, "h_stop", c.h_stop, source);
  c.h_step = get<double>(root, "h_step", c.h_step, source);
  c.scaling_mode = get<std::string>(root, "scaling_mode", c.scaling_mode, source);
  c.lambda_grid = get<std::vector<double>>(root, "lambda_grid", c.lambda_grid, source);
  c.lambda_step = get<double>(root, "lambda_step", c.lambda_step, source);
  c.t_max = get<double>(root, "t_max", c.t_max, source);
  c.dt = get<double>(root, "dt", c.dt, source);
  c.start_time = get<double>(root, "start_time", c.start_time, source);
  c.onsite_decay = get<bool>(root, "onsite_decay", c.onsite_decay, source);
  c.density_t_stop = get<double>(root, "density_t_stop", c.density_t_stop, source);
  c.density_t_step = get<double>(root, "density_t_step", c.density_t_step, source);
  c.winding_model = get<std::string>(root, "winding_model", c.winding_model, source);
  c.winding_g = get<double>(root, "winding_g", c.winding_g, source);
  c.winding_intervals = get<int>(root, "winding_intervals", c.winding_intervals, source);
  c.output_path = get<std::string>(root, "output_path", c.output_path, source);
  c.deterministic = get<bool>(root, "deterministic", c.deterministic, source);
  c.validate();
  return c;
}

ExperimentConfig read_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path, overrides);
}

std::string to_yaml(const ExperimentConfig& c) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "experiment" << YAML::Value << std::string(to_string(c.experiment));
  out << YAML::Key << "name" << YAML::Value << c.name;
  out << YAML::Key << "n_sites" << YAML::Value << c.n_sites;
  out << YAML::Key << "n_sites_list" << YAML::Value << YAML::Flow << c.n_sites_list;
  out << YAML::Key << "spacing" << YAML::Value << c.spacing;
  out << YAML::Key << "theta" << YAML::Value << c.theta;
  out << YAML::Key << "h" << YAML::Value << c.h.text;
  out << YAML::Key << "tolerance" << YAML::Value << c.tolerance;
  out << YAML::Key << "k_points" << YAML::Value << c.k_points;
  out << YAML::Key << "h_start" << YAML::Value << c.h_start;
  out << YAML::Key << "h_stop" << YAML::Value << c.h_stop;
  out << YAML::Key << "h_step" << YAML::Value << c.h_step;
  out << YAML::Key << "scaling_mode" << YAML::Value << c.scaling_mode;
  out << YAML::Key << "lambda_grid" << YAML::Value << YAML::Flow << c.lambda_grid;
  out << YAML::Key << "lambda_step" << YAML::Value << c.lambda_step;
  out << YAML::Key << "t_max" << YAML::Value << c.t_max;
  out << YAML::Key << "dt" << YAML::Value << c.dt;
  out << YAML::Key << "start_time" << YAML::Value << c.start_time;
  out << YAML::Key << "onsite_decay" << YAML::Value << c.onsite_decay;
  out << YAML::Key << "density_t_stop" << YAML::Value << c.density_t_stop;
  out << YAML::Key << "density_t_step" << YAML::Value << c.density_t_step;
  out << YAML::Key << "winding_model" << YAML::Value << c.winding_model;
  out << YAML::Key << "winding_g" << YAML::Value << c.winding_g;
  out << YAML::Key << "winding_intervals" << YAML::Value << c.winding_intervals;
  out << YAML::Key << "output_path" << YAML::Value << c.output_path;
  out << YAML::Key << "deterministic" << YAML::Value << c.deterministic;
  out << YAML::EndMap;
  return out.c_str();
}

}  // namespace altchain
