// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

#include "altchain/experiments.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "altchain/dispersion.hpp"
#include "altchain/edge_analysis.hpp"
#include "altchain/greens.hpp"
#include "altchain/hamiltonians.hpp"
#include "altchain/parallel.hpp"
#include "altchain/spectral.hpp"
#include "altchain/topology.hpp"
#include "altchain/walks.hpp"

namespace altchain {
namespace {

std::string column_label(const std::string& prefix, double value) {
  char buffer[48];
  std::snprintf(buffer, sizeof buffer, "%s%g", prefix.c_str(), value);
  return buffer;
}

AlternationStrength alternation_for(const ExperimentConfig& c, int n_sites) {
  return {c.h.resolve(n_sites), c.h.alpha()};
}

// Midpoints of `cells` equal cells on [lo, hi] in units of kd.
std::vector<double> midpoint_momenta(double lo, double hi, int cells, double spacing) {
  std::vector<double> k(cells);
  for (int j = 0; j < cells; ++j) k[j] = (lo + (hi - lo) * (j + 0.5) / cells) / spacing;
  return k;
}

void run_dispersion(const ExperimentConfig& c, ResultBundle& out) {
  const auto orient = c.orientation();
  const double h = c.h.resolve(c.n_sites);

  // Uniform chain over the full zone: omega(k) = -G~_d(k).
  const auto k_full = midpoint_momenta(-kPi, kPi, c.k_points, c.spacing);
  std::vector<FourierSum> g_d(k_full.size()), g_2d(k_full.size());
  parallel_for(k_full.size(), [&](std::size_t i) {
    g_d[i] = discrete_ft(k_full[i], c.spacing, orient, c.tolerance);
    g_2d[i] = discrete_ft(k_full[i], 2.0 * c.spacing, orient, c.tolerance);
  });
  Table fourier{{"k", "re_g_d", "im_g_d", "re_g_2d", "im_g_2d", "re_omega", "im_omega"}, {}};
  for (std::size_t i = 0; i < k_full.size(); ++i) {
    fourier.add_row({k_full[i], g_d[i].value.real(), g_d[i].value.imag(), g_2d[i].value.real(),
                     g_2d[i].value.imag(), -g_d[i].value.real(), -g_d[i].value.imag()});
  }
  out.tables["fourier"] = std::move(fourier);

  // Two-band chain over the reduced zone |kd| < pi/2.
  const auto k_red = midpoint_momenta(-kPi / 2, kPi / 2, c.k_points, c.spacing);
  std::vector<TwoBandDispersion> bands(k_red.size());
  parallel_for(k_red.size(), [&](std::size_t i) {
    bands[i] = two_band_dispersion(k_red[i], h, c.spacing, orient, c.tolerance);
  });
  track_branches(bands);
  Table band_table{{"k", "re_omega_plus", "im_omega_plus", "re_omega_minus", "im_omega_minus"}, {}};
  for (const auto& b : bands) {
    band_table.add_row({b.k, b.omega_plus.real(), b.omega_plus.imag(), b.omega_minus.real(), b.omega_minus.imag()});
  }
  out.tables["bands"] = std::move(band_table);

  try {
    std::vector<double> h_ep(k_red.size());
    parallel_for(k_red.size(), [&](std::size_t i) { h_ep[i] = ep_condition(k_red[i], c.spacing, orient); });
    Table ep{{"k", "h_ep"}, {}};
    for (std::size_t i = 0; i < k_red.size(); ++i) ep.add_row({k_red[i], h_ep[i]});
    out.tables["ep_condition"] = std::move(ep);
  } catch (const DomainError& e) {
    out.notes.emplace_back("ep_condition", e.what());
  }
  out.scalars.emplace_back("h", h);
}

void run_ep_scan(const ExperimentConfig& c, ResultBundle& out) {
  const auto geom = c.geometry();
  const auto orient = c.orientation();
  std::vector<double> grid;
  const long steps = std::lround((c.h_stop - c.h_start) / c.h_step);
  for (long i = 0; i <= steps; ++i) grid.push_back(c.h_start + c.h_step * static_cast<double>(i));
  const MatrixFamily family = [&](double h) {
    return build_two_band(geom, orient, AlternationStrength{h, std::nullopt});
  };
  const EpReport report = scan_eps(family, grid);

  Table curve{{"h", "angle"}, {}};
  for (std::size_t i = 0; i < report.h_grid.size(); ++i) curve.add_row({report.h_grid[i], report.angle_curve[i]});
  Table minima{{"h", "angle", "below_threshold"}, {}};
  for (const auto& m : report.minima) minima.add_row({m.h, m.angle, m.angle < EpScanOptions{}.threshold ? 1.0 : 0.0});
  out.tables["angle_curve"] = std::move(curve);
  out.tables["minima"] = std::move(minima);

  const BlochCensus census = bloch_census(c.n_sites, kEpAlternation, c.spacing, orient);
  Table census_table{{"k", "defective"}, {}};
  for (std::size_t i = 0; i < census.k.size(); ++i) census_table.add_row({census.k[i], census.defective[i] ? 1.0 : 0.0});
  out.tables["census"] = std::move(census_table);

  out.scalars.emplace_back("closest_h", report.closest_h);
  out.scalars.emplace_back("jordan_block_count", report.jordan_block_count);
  out.scalars.emplace_back("candidate_count", static_cast<double>(report.candidates.size()));
  out.scalars.emplace_back("census_h", kEpAlternation);
  out.scalars.emplace_back("census_defective", census.defective_count);
  out.scalars.emplace_back("census_diagonalizable", census.diagonalizable_count);
}

void add_fit(const PowerLawFit& fit, ResultBundle& out) {
  out.scalars.emplace_back("fit_exponent", fit.exponent);
  out.scalars.emplace_back("fit_prefactor", fit.prefactor);
  out.scalars.emplace_back("fit_r_squared", fit.r_squared);
  out.scalars.emplace_back("fit_stderr_exponent", fit.stderr_exponent);
}

void run_scaling(const ExperimentConfig& c, ResultBundle& out) {
  const auto orient = c.orientation();
  if (c.scaling_mode == "edge-ep") {
    const EdgeEpScaling s = h_edge_ep_scaling(c.n_sites_list, c.spacing, orient);
    Table t{{"n_sites", "h_edge_ep", "angle"}, {}};
    for (std::size_t i = 0; i < s.sizes.size(); ++i) t.add_row({double(s.sizes[i]), s.h_edge_ep[i], s.angles[i]});
    out.tables["edge_ep"] = std::move(t);
    add_fit(s.fit, out);
    return;
  }
  const auto& sizes = c.n_sites_list;
  std::vector<double> rates(sizes.size()), hs(sizes.size()), ns(sizes.size());
  parallel_for(sizes.size(), [&](std::size_t i) {
    const ChainGeometry geom{sizes[i], c.spacing};
    const auto alt = alternation_for(c, sizes[i]);
    hs[i] = alt.h;
    ns[i] = sizes[i];
    rates[i] = min_decay_rate(build_two_band(geom, orient, alt));
  });
  Table t{{"n_sites", "h", "min_decay_rate"}, {}};
  for (std::size_t i = 0; i < sizes.size(); ++i) t.add_row({ns[i], hs[i], rates[i]});
  out.tables["subradiance"] = std::move(t);
  add_fit(fit_power_law(ns, rates), out);
}

void profile_scalars(const EdgeStateProfile& p, ResultBundle& out) {
  out.scalars.emplace_back("re_eigenvalue", p.eigenvalue.real());
  out.scalars.emplace_back("im_eigenvalue", p.eigenvalue.imag());
  out.scalars.emplace_back("decay_rate", 2.0 * kOnsiteHalfWidth - 2.0 * p.eigenvalue.imag());
  out.scalars.emplace_back("boundary_weight", p.boundary_weight);
  out.scalars.emplace_back("left_weight", p.left_weight);
  out.scalars.emplace_back("right_weight", p.right_weight);
  out.scalars.emplace_back("participation_ratio", participation_ratio(p));
  out.scalars.emplace_back("localization_length", localization_length(p));
}

Table profile_table(const EdgeStateProfile& p) {
  Table t{{"site", "abs_psi"}, {}};
  const Eigen::VectorXd mag = p.magnitudes();
  for (Eigen::Index x = 0; x < mag.size(); ++x) t.add_row({double(x), mag(x)});
  return t;
}

void run_edge(const ExperimentConfig& c, ResultBundle& out) {
  const auto alt = alternation_for(c, c.n_sites);
  const Spectrum spectrum = eigendecompose(build_two_band(c.geometry(), c.orientation(), alt));
  Table spec{{"re_omega", "im_omega"}, {}};
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) spec.add_row({spectrum.eigenvalues(i).real(), spectrum.eigenvalues(i).imag()});
  out.tables["spectrum"] = std::move(spec);

  const EdgeSearch search = search_edge_state(spectrum);
  out.scalars.emplace_back("h", alt.h);
  out.scalars.emplace_back("localized", search.localized ? 1.0 : 0.0);
  profile_scalars(search.best, out);
  out.tables["profile"] = profile_table(search.best);
  try {
    const PowerLawFit fit = fit_tail(search.best);
    out.scalars.emplace_back("tail_exponent", fit.exponent);
    out.scalars.emplace_back("tail_r_squared", fit.r_squared);
  } catch (const DomainError& e) {
    out.notes.emplace_back("tail_fit", e.what());
  }
}

void run_deform(const ExperimentConfig& c, ResultBundle& out) {
  const auto alt = alternation_for(c, c.n_sites);
  DeformationSweepOptions options;
  options.max_step = c.lambda_step;
  const DeformationSweep sweep =
      deformation_sweep(c.geometry(), alt, c.orientation(), c.lambda_grid, options);
  Table profiles{{"site"}, {}};
  for (double l : sweep.lambda_grid) profiles.columns.push_back(column_label("abs_psi_lambda_", l));
  for (Eigen::Index x = 0; x < c.n_sites; ++x) {
    std::vector<double> row{double(x)};
    for (const auto& p : sweep.profiles) row.push_back(std::abs(p.amplitudes(x)));
    profiles.add_row(std::move(row));
  }
  Table pr{{"lambda", "participation_ratio", "min_overlap", "boundary_weight"}, {}};
  for (std::size_t i = 0; i < sweep.lambda_grid.size(); ++i) {
    pr.add_row({sweep.lambda_grid[i], sweep.participation_ratios[i], sweep.min_overlaps[i],
                sweep.profiles[i].boundary_weight});
  }
  out.tables["profiles"] = std::move(profiles);
  out.tables["participation"] = std::move(pr);
  out.scalars.emplace_back("h", alt.h);
}

void run_walk(const ExperimentConfig& c, ResultBundle& out) {
  const auto alt = alternation_for(c, c.n_sites);
  const ComplexMatrix h = build_two_band(c.geometry(), c.orientation(), alt, {c.onsite_decay});
  const WalkState w = make_w_state(c.n_sites);

  EscapeOptions at_zero{0.0, c.t_max, c.dt};
  EscapeOptions at_start{c.start_time, c.t_max, c.dt};
  EscapeDistribution f0, fs;
  parallel_for(2, [&](std::size_t i) {
    if (i == 0) f0 = escape_distribution(h, w, at_zero);
    else fs = escape_distribution(h, w, at_start);
  });
  Table escape{{"site", "f_zero", "f_start"}, {}};
  for (Eigen::Index x = 0; x < c.n_sites; ++x) escape.add_row({double(x), f0.values(x), fs.values(x)});
  out.tables["escape"] = std::move(escape);

  std::vector<double> t_grid;
  const long steps = std::lround(c.density_t_stop / c.density_t_step);
  for (long i = 0; i <= steps; ++i) t_grid.push_back(c.density_t_step * static_cast<double>(i));
  const Eigen::MatrixXd density = density_map(h, w, t_grid);
  Table grid{{"t"}, {}};
  for (int x = 0; x < c.n_sites; ++x) grid.columns.push_back("site_" + std::to_string(x));
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    std::vector<double> row{t_grid[i]};
    for (int x = 0; x < c.n_sites; ++x) row.push_back(density(static_cast<Eigen::Index>(i), x));
    grid.add_row(std::move(row));
  }
  out.tables["density"] = std::move(grid);

  const CurrentDecomposition cur = current_decomposition(h, propagate(h, w, c.start_time));
  Table currents{{"site", "coherent", "incoherent", "density_rate"}, {}};
  for (Eigen::Index x = 0; x < c.n_sites; ++x) {
    currents.add_row({double(x), cur.coherent(x), cur.incoherent(x), cur.density_rate(x)});
  }
  out.tables["currents"] = std::move(currents);

  out.scalars.emplace_back("h", alt.h);
  out.scalars.emplace_back("sum_f_zero", f0.sum());
  out.scalars.emplace_back("sum_f_start", fs.sum());
  out.scalars.emplace_back("quadrature_error_zero", f0.quadrature_error);
  out.scalars.emplace_back("quadrature_error_start", fs.quadrature_error);
  out.scalars.emplace_back("residual_norm2", f0.residual_norm2);
  out.scalars.emplace_back("norm2_at_start", propagate(h, w, c.start_time).norm2());
}

void run_winding(const ExperimentConfig& c, ResultBundle& out) {
  const double h = c.h.resolve(c.n_sites);
  std::vector<Complex> q;
  std::vector<double> kd;
  if (c.winding_model == "short-range") {
    q = short_range_q_samples(c.winding_g, h, c.spacing, c.winding_intervals);
    for (int j = 0; j <= c.winding_intervals; ++j) kd.push_back(-kPi + 2.0 * kPi * j / c.winding_intervals);
  } else {
    q = long_range_q_samples(h, c.spacing, c.orientation(), c.winding_intervals);
    for (int j = 0; j < c.winding_intervals; ++j) kd.push_back(-kPi / 2 + kPi * (j + 0.5) / c.winding_intervals);
  }
  const WindingResult w = winding_number(q);
  Table samples{{"kd", "re_q", "im_q"}, {}};
  for (std::size_t i = 0; i < q.size(); ++i) samples.add_row({kd[i], q[i].real(), q[i].imag()});
  out.tables["q_samples"] = std::move(samples);
  out.scalars.emplace_back("h", h);
  out.scalars.emplace_back("winding", w.value);
  out.scalars.emplace_back("defined", w.defined ? 1.0 : 0.0);
  out.scalars.emplace_back("residual", w.residual);
  out.scalars.emplace_back("max_jump", w.max_jump);
  out.scalars.emplace_back("discontinuities", static_cast<double>(w.discontinuities.size()));
}

template <typename E>
[[noreturn]] void rethrow_with_context(const E& e, const ExperimentConfig& c) {
  throw E(std::string(to_string(c.experiment)) + " '" + c.name + "': " + e.what());
}

}  // namespace

std::string_view library_version() { return ALTCHAIN_VERSION; }

const Table& ResultBundle::table(const std::string& key) const {
  const auto it = tables.find(key);
  if (it == tables.end()) throw Error("result has no table '" + key + "'");
  return it->second;
}

double ResultBundle::scalar(const std::string& key) const {
  for (const auto& [k, v] : scalars) {
    if (k == key) return v;
  }
  throw Error("result has no scalar '" + key + "'");
}

ResultBundle run_experiment(const ExperimentConfig& config) {
  config.validate();
  ResultBundle out;
  out.experiment = std::string(to_string(config.experiment));
  out.name = config.name;
  out.config_yaml = to_yaml(config);
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (config.experiment) {
      case Experiment::kDispersion: run_dispersion(config, out); break;
      case Experiment::kEpScan: run_ep_scan(config, out); break;
      case Experiment::kScaling: run_scaling(config, out); break;
      case Experiment::kEdge: run_edge(config, out); break;
      case Experiment::kDeform: run_deform(config, out); break;
      case Experiment::kWalk: run_walk(config, out); break;
      case Experiment::kWinding: run_winding(config, out); break;
    }
  } catch (const FourierConvergenceError& e) {
    rethrow_with_context(ConvergenceError(e.what()), config);
  } catch (const DomainError& e) {
    rethrow_with_context(e, config);
  } catch (const ConvergenceError& e) {
    rethrow_with_context(e, config);
  } catch (const AmbiguityError& e) {
    rethrow_with_context(e, config);
  }
  out.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

void write_bundle(const ResultBundle& bundle, const std::string& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw IoError("cannot create '" + directory + "': " + ec.message());
  const std::filesystem::path dir(directory);
  for (const auto& [key, table] : bundle.tables) write_csv((dir / (key + ".csv")).string(), table);

  nlohmann::ordered_json meta;
  meta["experiment"] = bundle.experiment;
  meta["name"] = bundle.name;
  meta["library_version"] = library_version();
  meta["wall_time_s"] = bundle.wall_time_s;
  meta["workers"] = worker_count();
  meta["config"] = bundle.config_yaml;
  auto& scalars = meta["results"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : bundle.scalars) scalars[k] = v;
  auto& notes = meta["notes"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : bundle.notes) notes[k] = v;
  auto& tables = meta["tables"] = nlohmann::ordered_json::array();
  for (const auto& [key, table] : bundle.tables) tables.push_back(key + ".csv");

  const auto path = (dir / "metadata.json").string();
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << meta.dump(2) << '\n';
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace altchain
