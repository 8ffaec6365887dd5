// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "altchain/spectral.hpp"
#include "altchain/types.hpp"

namespace altchain {

enum class ChainEnd { kLeft, kRight };

struct EdgeStateProfile {
  ComplexVector amplitudes;  // unit norm
  Complex eigenvalue;
  Eigen::Index index = -1;   // position in the source spectrum
  double left_weight = 0;    // probability on the first boundary_fraction of sites
  double right_weight = 0;   // ... and on the last
  double boundary_weight = 0;
  ChainEnd end = ChainEnd::kLeft;  // the heavier end
  std::optional<PowerLawFit> tail_fit;

  Eigen::VectorXd magnitudes() const { return amplitudes.cwiseAbs(); }
  Eigen::Index size() const { return amplitudes.size(); }
};

/// Profile of a state; boundary weight is the larger of the two end weights.
EdgeStateProfile make_profile(const ComplexVector& state, Complex eigenvalue, double boundary_fraction = 0.1);

/// Indices of the two eigenvalues closest to the pseudo-real axis
/// Im omega = Im tr(H)/N (ties resolved toward lower Re). For the alternating
/// chain these are the descendants of the k = +-pi/(2d) light-line states.
std::pair<Eigen::Index, Eigen::Index> edge_candidates(const ComplexVector& eigenvalues);

struct EdgeSearchOptions {
  double boundary_fraction = 0.1;
  double localization_threshold = 0.5;
  double ambiguity = 1e-3;
};

struct EdgeSearch {
  EdgeStateProfile best;     // candidate with the larger boundary weight
  EdgeStateProfile partner;  // the other light-line descendant
  bool localized = false;    // best.boundary_weight > threshold
};

/// Throws AmbiguityError when both candidates are localized with boundary
/// weights equal to within options.ambiguity.
EdgeSearch search_edge_state(const Spectrum& spectrum, EdgeSearchOptions options = {});

/// The localized edge state, or nothing when no candidate passes the threshold.
std::optional<EdgeStateProfile> find_edge_state(const Spectrum& spectrum, EdgeSearchOptions options = {});

enum class TailSampling {
  kCellEnvelope,  // sqrt(|psi_{2j-1}|^2 + |psi_{2j}|^2) per two-site cell
  kSite,          // |psi(x)| per site
};

struct TailWindow {
  double begin_fraction = 0.1;  // distances from the localized end, in units of N
  double end_fraction = 0.9;
  TailSampling sampling = TailSampling::kCellEnvelope;
  double min_r_squared = 0.9;
};

/// Log-log fit of the amplitude against distance from the localized end
/// (distance 1 on the boundary site). Throws DomainError("tail not algebraic
/// on this window") when r^2 < min_r_squared or when an exponential
/// (semi-log) fit describes the window better.
PowerLawFit fit_tail(const EdgeStateProfile& profile, TailWindow window = {});

/// 1 / sum |psi|^4 for a normalized profile.
double participation_ratio(const EdgeStateProfile& profile);

/// Mean distance sum |x - x_end| |psi(x)|^2 from the heavier end, in sites.
double localization_length(const EdgeStateProfile& profile);

struct DeformationSweepOptions {
  double max_step = 0.05;      // continuation step in lambda
  double connect_step = 0.25;  // initial step when switching off the sublattice-diagonal hopping
  double min_overlap = 0.5;
  EdgeSearchOptions search;
};

struct DeformationSweep {
  std::vector<double> lambda_grid;
  std::vector<EdgeStateProfile> profiles;
  std::vector<double> participation_ratios;
  std::vector<double> min_overlaps;  // smallest continuation overlap since the previous grid point
  double connect_overlap = 1;        // smallest overlap on the way from the full chain to lambda = 0
};

/// Follows the edge state of the full chain to the sigma_0-stripped chain
/// (lambda = 0) and then through the real-space deformation, by maximal
/// eigenvector overlap with adaptive step halving. Throws
/// ConvergenceError("band tracking lost; refine grid") when an overlap stays
/// below min_overlap at 1/64 of the step, DomainError when the full chain has
/// no localized edge state.
DeformationSweep deformation_sweep(const ChainGeometry& geometry, const AlternationStrength& alternation,
                                   const DipoleOrientation& orientation, std::span<const double> lambda_grid,
                                   DeformationSweepOptions options = {});

}  // namespace altchain
