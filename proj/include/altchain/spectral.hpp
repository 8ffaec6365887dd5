// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "altchain/types.hpp"

namespace altchain {

/// Eigenvalues with unit-norm right and left eigenvectors (columns), ordered
/// by (Re, Im). condition(i) = 1/|<L_i|R_i>|, the eigenvalue condition number;
/// it diverges at an exceptional point.
struct Spectrum {
  ComplexVector eigenvalues;
  ComplexMatrix right_vectors;
  ComplexMatrix left_vectors;
  Eigen::VectorXd condition;
  double matrix_norm = 0;  // Frobenius norm of the input

  Eigen::Index size() const { return eigenvalues.size(); }
  bool has_vectors() const { return right_vectors.size() > 0; }
};

/// Full complex eigendecomposition. Left vectors come from the rows of V^-1,
/// or from the eigenvectors of H^dagger when V is numerically singular.
Spectrum eigendecompose(const ComplexMatrix& matrix, bool compute_vectors = true);

/// Eigenvalues only, ordered by (Re, Im).
ComplexVector eigenvalues(const ComplexMatrix& matrix);

/// Smallest angle arccos|<v_i|v_j>| between normalized columns, in [0, pi/2].
double min_pairwise_angle(const ComplexMatrix& vectors);

/// Eigenvector-angle metric alpha_m of a spectrum. Right vectors inside a
/// cluster of numerically equal eigenvalues are orthonormalized first when
/// they span the cluster, so diagonalizable degeneracies report pi/2.
double angle_metric(const Spectrum& spectrum, double degeneracy_tolerance = 1e-8);

using MatrixFamily = std::function<ComplexMatrix(double)>;

struct EpScanOptions {
  double threshold = 0.01;       // alpha_m below this flags an EP candidate
  double resolution = 1e-6;      // golden-section stopping width in h
  bool refine = true;
};

struct EpCandidate {
  double h = 0;
  double angle = 0;
};

struct EpReport {
  std::vector<double> h_grid;
  std::vector<double> angle_curve;
  std::vector<EpCandidate> minima;      // every grid-local minimum, refined, ascending h
  std::vector<EpCandidate> candidates;  // minima below threshold: detected EPs
  std::vector<double> h_values;         // candidate locations
  double closest_h = 0;                 // location of the smallest refined angle
  int jordan_block_count = 0;           // near-coalescent vector pairs at closest_h
};

/// alpha_m over the grid; every grid-local minimum is refined by golden-section
/// search within its neighbouring grid cells and kept when below threshold.
EpReport scan_eps(const MatrixFamily& family, std::span<const double> h_grid, EpScanOptions options = {});

/// Minimizes f on [a, b] by golden-section search to the given width.
/// Returns (argmin, min).
std::pair<double, double> golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                                                  double width);

struct JordanCluster {
  Complex eigenvalue;       // cluster mean
  int algebraic = 0;        // cluster size
  int geometric = 0;        // N - rank(H - lambda)
  int defective_blocks = 0; // Jordan blocks of size >= 2
};

struct JordanCensus {
  std::vector<JordanCluster> clusters;
  int diagonalizable_blocks = 0;  // 1x1 blocks
  int defective_blocks = 0;       // blocks of size >= 2
};

/// Clusters eigenvalues within tolerance * max(1, ||H||) and classifies each
/// cluster by rank(H - lambda) and rank((H - lambda)^2), ranks counted with a
/// singular-value threshold sqrt(tolerance) * max(1, ||H||). Throws
/// AmbiguityError when two clusters are closer than twice the radius.
JordanCensus jordan_structure(const ComplexMatrix& matrix, double tolerance = 1e-6);

/// Jordan census of the 2x2 Bloch matrices on the momentum grid of an
/// N-site chain. Per k, a sample is either one defective block or two 1x1 blocks.
struct BlochCensus {
  std::vector<double> k;
  std::vector<bool> defective;
  int defective_count = 0;
  int diagonalizable_count = 0;
};

BlochCensus bloch_census(int n_sites, double h, double spacing, const DipoleOrientation& orientation,
                         double tolerance = 1e-6);

/// A horizontal line Im omega = c splitting the spectrum into two parts, with
/// each side holding at least min_fraction of the eigenvalues; the widest such
/// gap is reported when wider than threshold.
struct LineGap {
  bool gapped = false;
  double line = 0;    // c, the mid-gap value
  double width = 0;   // gap between the neighbouring imaginary parts
  int below = 0;      // eigenvalue count with Im < c
};

LineGap line_gap(const ComplexVector& eigenvalues, double min_fraction = 0.25, double threshold = 0.05);

/// Least-squares line log y = log A + p log x.
struct PowerLawFit {
  double exponent = 0;
  double prefactor = 0;
  double r_squared = 0;
  double stderr_exponent = 0;
  std::pair<double, double> window{0, 0};  // fitted x range
};

PowerLawFit fit_power_law(std::span<const double> sizes, std::span<const double> values);

/// min over eigenvalues of the total decay rate 1 - 2 Im(omega) (on-site
/// gamma0 included), for a hopping-only matrix H.
double min_decay_rate(const ComplexMatrix& hamiltonian);

/// Angle between the right eigenvectors of the two lowest-Re eigenvalues,
/// obtained by inverse iteration (no full eigenvector computation).
double edge_pair_angle(const ComplexMatrix& hamiltonian);

struct EdgeEpSearch {
  double h_min = 0.002;
  double h_max = 0.3;
  int coarse_points = 40;     // log-spaced
  double resolution = 1e-5;   // relative golden-section width
  double threshold = 0.01;
};

/// h^E_EP of an N-site two-band chain: minimum of edge_pair_angle over h.
/// Throws ConvergenceError when the minimum angle stays above threshold.
EpCandidate locate_edge_ep(int n_sites, double spacing, const DipoleOrientation& orientation,
                           EdgeEpSearch search = {});

struct EdgeEpScaling {
  std::vector<int> sizes;
  std::vector<double> h_edge_ep;
  std::vector<double> angles;
  PowerLawFit fit;
};

EdgeEpScaling h_edge_ep_scaling(std::span<const int> sizes, double spacing, const DipoleOrientation& orientation,
                                EdgeEpSearch search = {});

}  // namespace altchain
