// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

// altchain run <config> [--override key=value]... [--output dir]
// altchain list-presets

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "altchain/config.hpp"
#include "altchain/errors.hpp"
#include "altchain/experiments.hpp"

namespace {

constexpr int kExitOther = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

std::filesystem::path preset_dir() {
  if (const char* env = std::getenv("ALTCHAIN_PRESETS")) return env;
  return ALTCHAIN_PRESET_DIR;
}

int list_presets() {
  const auto dir = preset_dir();
  if (!std::filesystem::is_directory(dir)) {
    std::cerr << "error: preset directory '" << dir.string() << "' not found\n";
    return kExitIo;
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".yaml") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    const auto config = altchain::read_config(f.string());
    std::cout << f.stem().string() << "\t" << altchain::to_string(config.experiment) << "\t" << f.string() << "\n";
  }
  return 0;
}

int run(const std::string& path, const std::vector<std::string>& overrides, const std::string& output) {
  auto config = altchain::read_config(path, overrides);
  if (!output.empty()) config.output_path = output;
  const auto bundle = altchain::run_experiment(config);
  altchain::write_bundle(bundle, config.output_path);
  std::cout << bundle.experiment << " '" << bundle.name << "' -> " << config.output_path << " ("
            << bundle.wall_time_s << " s)\n";
  for (const auto& [key, value] : bundle.scalars) std::cout << "  " << key << " = " << value << "\n";
  for (const auto& [key, note] : bundle.notes) std::cout << "  note[" << key << "]: " << note << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Alternating quantum-emitter chain experiments"};
  app.set_version_flag("--version", std::string(altchain::library_version()));
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run the experiment described by a YAML config");
  std::string config_path, output;
  std::vector<std::string> overrides;
  run_cmd->add_option("config", config_path, "Config file")->required();
  run_cmd->add_option("--override,-o", overrides, "Override a config field: key=value");
  run_cmd->add_option("--output", output, "Output directory (overrides output_path)");

  auto* list_cmd = app.add_subcommand("list-presets", "List the shipped preset configs");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*list_cmd) return list_presets();
    return run(config_path, overrides, output);
  } catch (const altchain::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const altchain::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const altchain::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const altchain::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const altchain::AmbiguityError& e) {
    std::cerr << "ambiguity error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
}
