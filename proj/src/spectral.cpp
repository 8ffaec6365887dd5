// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

#include "altchain/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "altchain/dispersion.hpp"
#include "altchain/hamiltonians.hpp"
#include "altchain/parallel.hpp"

namespace altchain {
namespace {

std::vector<Eigen::Index> sorted_order(const ComplexVector& values) {
  std::vector<Eigen::Index> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (values(a).real() != values(b).real()) return values(a).real() < values(b).real();
    return values(a).imag() < values(b).imag();
  });
  return order;
}

// Single-linkage clusters of points closer than radius.
std::vector<std::vector<Eigen::Index>> cluster(const ComplexVector& values, double radius) {
  const Eigen::Index n = values.size();
  std::vector<Eigen::Index> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Eigen::Index i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(values(i) - values(j)) <= radius) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<Eigen::Index>> groups;
  std::vector<Eigen::Index> slot(n, -1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index root = find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<Eigen::Index>(groups.size());
      groups.emplace_back();
    }
    groups[slot[root]].push_back(i);
  }
  return groups;
}

int numerical_rank(const ComplexMatrix& a, double threshold) {
  const Eigen::VectorXd s = Eigen::BDCSVD<ComplexMatrix>(a).singularValues();
  return static_cast<int>((s.array() > threshold).count());
}

// Starting vector for inverse iteration; deterministic and generic.
ComplexVector probe_vector(Eigen::Index n) {
  ComplexVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex{1.0 + 0.37 * std::sin(1.3 * i), 0.21 * std::cos(0.7 * i)};
  return v.normalized();
}

ComplexVector inverse_iteration(const ComplexMatrix& h, Complex lambda, int steps = 3) {
  const Eigen::Index n = h.rows();
  const double shift = 1e-10 * std::max(1.0, h.norm());
  Eigen::PartialPivLU<ComplexMatrix> lu(h - (lambda + Complex{shift, shift}) * ComplexMatrix::Identity(n, n));
  ComplexVector v = probe_vector(n);
  for (int s = 0; s < steps; ++s) v = lu.solve(v).normalized();
  return v;
}

}  // namespace

Spectrum eigendecompose(const ComplexMatrix& matrix, bool compute_vectors) {
  if (matrix.rows() != matrix.cols() || matrix.rows() < 1) throw DomainError("eigendecompose: need a non-empty square matrix");
  if (!matrix.allFinite()) throw DomainError("eigendecompose: matrix has non-finite entries");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(matrix, compute_vectors);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("eigendecompose: QR iteration did not converge for a " +
                           std::to_string(matrix.rows()) + "x" + std::to_string(matrix.rows()) + " matrix");
  }
  const Eigen::Index n = matrix.rows();
  const auto order = sorted_order(solver.eigenvalues());
  Spectrum out;
  out.matrix_norm = matrix.norm();
  out.eigenvalues.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) out.eigenvalues(i) = solver.eigenvalues()(order[i]);
  if (!compute_vectors) return out;

  out.right_vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) out.right_vectors.col(i) = solver.eigenvectors().col(order[i]).normalized();
  out.left_vectors.resize(n, n);
  out.condition.resize(n);

  Eigen::PartialPivLU<ComplexMatrix> lu(out.right_vectors);
  if (lu.rcond() > 1e-13) {
    // Rows of V^-1 are the dual basis: W_i . R_j = delta_ij.
    const ComplexMatrix dual = lu.inverse();
    for (Eigen::Index i = 0; i < n; ++i) {
      const double row_norm = dual.row(i).norm();
      out.left_vectors.col(i) = dual.row(i).adjoint() / row_norm;
      out.condition(i) = row_norm;
    }
    return out;
  }

  // Near-defective: left vectors are eigenvectors of H^dagger at conj(lambda).
  Eigen::ComplexEigenSolver<ComplexMatrix> adjoint_solver(matrix.adjoint());
  if (adjoint_solver.info() != Eigen::Success) throw ConvergenceError("eigendecompose: adjoint QR iteration did not converge");
  std::vector<bool> used(n, false);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double dist = std::abs(std::conj(adjoint_solver.eigenvalues()(j)) - out.eigenvalues(i));
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    used[best] = true;
    out.left_vectors.col(i) = adjoint_solver.eigenvectors().col(best).normalized();
    const double overlap = std::abs(out.left_vectors.col(i).dot(out.right_vectors.col(i)));
    out.condition(i) = overlap > 0 ? 1.0 / overlap : std::numeric_limits<double>::infinity();
  }
  return out;
}

ComplexVector eigenvalues(const ComplexMatrix& matrix) { return eigendecompose(matrix, false).eigenvalues; }

double min_pairwise_angle(const ComplexMatrix& vectors) {
  if (vectors.cols() < 2) return kPi / 2;
  ComplexMatrix v = vectors;
  v.colwise().normalize();
  const ComplexMatrix gram = v.adjoint() * v;
  double largest = 0.0;
  for (Eigen::Index j = 0; j < gram.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) largest = std::max(largest, std::abs(gram(i, j)));
  }
  return std::acos(std::min(1.0, largest));
}

double angle_metric(const Spectrum& spectrum, double degeneracy_tolerance) {
  if (!spectrum.has_vectors()) throw DomainError("angle_metric: spectrum has no eigenvectors");
  ComplexMatrix v = spectrum.right_vectors;
  const double radius = degeneracy_tolerance * std::max(1.0, spectrum.matrix_norm);
  for (const auto& group : cluster(spectrum.eigenvalues, radius)) {
    if (group.size() < 2) continue;
    ComplexMatrix block(v.rows(), static_cast<Eigen::Index>(group.size()));
    for (std::size_t c = 0; c < group.size(); ++c) block.col(c) = v.col(group[c]);
    const Eigen::VectorXd s = Eigen::JacobiSVD<ComplexMatrix>(block).singularValues();
    if (s(s.size() - 1) < 1e-4 * s(0)) continue;  // coalescing vectors: an EP, keep as is
    const ComplexMatrix q = Eigen::HouseholderQR<ComplexMatrix>(block).householderQ() *
                            ComplexMatrix::Identity(block.rows(), block.cols());
    for (std::size_t c = 0; c < group.size(); ++c) v.col(group[c]) = q.col(c);
  }
  return min_pairwise_angle(v);
}

std::pair<double, double> golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                                                  double width) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > width) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? std::pair{c, fc} : std::pair{d, fd};
}

EpReport scan_eps(const MatrixFamily& family, std::span<const double> h_grid, EpScanOptions options) {
  if (!std::is_sorted(h_grid.begin(), h_grid.end())) throw DomainError("scan_eps: h grid must be sorted");
  auto angle_at = [&](double h) { return angle_metric(eigendecompose(family(h))); };

  EpReport report;
  report.h_grid.assign(h_grid.begin(), h_grid.end());
  const std::size_t n = h_grid.size();
  report.angle_curve.resize(n);
  parallel_for(n, [&](std::size_t i) { report.angle_curve[i] = angle_at(h_grid[i]); });
  if (n == 0) return report;

  const auto& a = report.angle_curve;
  std::vector<std::size_t> minima;
  for (std::size_t i = 0; i < n; ++i) {
    const bool left = i == 0 || a[i] < a[i - 1];
    const bool right = i + 1 == n || a[i] <= a[i + 1];
    if (left && right && n > 1) minima.push_back(i);
  }

  std::vector<EpCandidate> refined(minima.size());
  parallel_for(minima.size(), [&](std::size_t m) {
    const std::size_t i = minima[m];
    if (!options.refine) {
      refined[m] = {h_grid[i], a[i]};
      return;
    }
    const double lo = h_grid[i == 0 ? 0 : i - 1];
    const double hi = h_grid[i + 1 == n ? n - 1 : i + 1];
    auto [h, angle] = golden_section_minimize(angle_at, lo, hi, options.resolution);
    refined[m] = angle < a[i] ? EpCandidate{h, angle} : EpCandidate{h_grid[i], a[i]};
  });

  double best = std::numeric_limits<double>::infinity();
  report.closest_h = h_grid[std::min_element(a.begin(), a.end()) - a.begin()];
  best = *std::min_element(a.begin(), a.end());
  report.minima = refined;
  for (const auto& c : refined) {
    if (c.angle < best) {
      best = c.angle;
      report.closest_h = c.h;
    }
    if (c.angle < options.threshold) {
      report.candidates.push_back(c);
      report.h_values.push_back(c.h);
    }
  }

  // Greedy matching of near-parallel vector pairs at the closest approach.
  const Spectrum s = eigendecompose(family(report.closest_h));
  ComplexMatrix v = s.right_vectors;
  const ComplexMatrix gram = v.adjoint() * v;
  std::vector<std::pair<double, std::pair<Eigen::Index, Eigen::Index>>> pairs;
  for (Eigen::Index j = 0; j < gram.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      const double angle = std::acos(std::min(1.0, std::abs(gram(i, j))));
      if (angle < options.threshold) pairs.push_back({angle, {i, j}});
    }
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<bool> taken(v.cols(), false);
  for (const auto& [angle, ij] : pairs) {
    if (taken[ij.first] || taken[ij.second]) continue;
    taken[ij.first] = taken[ij.second] = true;
    ++report.jordan_block_count;
  }
  return report;
}

JordanCensus jordan_structure(const ComplexMatrix& matrix, double tolerance) {
  if (matrix.rows() != matrix.cols()) throw DomainError("jordan_structure: matrix must be square");
  if (!(tolerance > 0.0)) throw DomainError("jordan_structure: tolerance must be positive");
  const Eigen::Index n = matrix.rows();
  const double scale = std::max(1.0, matrix.norm());
  const double radius = tolerance * scale;
  const double rank_threshold = std::sqrt(tolerance) * scale;
  const ComplexVector values = eigenvalues(matrix);
  const auto groups = cluster(values, radius);

  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t h = g + 1; h < groups.size(); ++h) {
      for (auto i : groups[g]) {
        for (auto j : groups[h]) {
          if (std::abs(values(i) - values(j)) < 2.0 * radius) {
            throw AmbiguityError("jordan_structure: eigenvalue clusters closer than twice the tolerance (" +
                                 std::to_string(std::abs(values(i) - values(j))) + "); adjust the tolerance");
          }
        }
      }
    }
  }

  JordanCensus census;
  const ComplexMatrix identity = ComplexMatrix::Identity(n, n);
  for (const auto& group : groups) {
    JordanCluster c;
    for (auto i : group) c.eigenvalue += values(i);
    c.eigenvalue /= static_cast<double>(group.size());
    c.algebraic = static_cast<int>(group.size());
    const ComplexMatrix shifted = matrix - c.eigenvalue * identity;
    const int r1 = numerical_rank(shifted, rank_threshold);
    const int r2 = numerical_rank(shifted * shifted, rank_threshold);
    c.geometric = static_cast<int>(n) - r1;
    c.defective_blocks = r1 - r2;
    census.defective_blocks += c.defective_blocks;
    census.diagonalizable_blocks += c.geometric - c.defective_blocks;
    census.clusters.push_back(c);
  }
  return census;
}

BlochCensus bloch_census(int n_sites, double h, double spacing, const DipoleOrientation& orientation,
                         double tolerance) {
  BlochCensus out;
  out.k = momentum_grid(n_sites, spacing);
  out.defective.assign(out.k.size(), false);
  for (std::size_t i = 0; i < out.k.size(); ++i) {
    const Matrix2c m = build_bloch(out.k[i], AlternationStrength{h, std::nullopt}, spacing, orientation, 1e-12).matrix;
    const JordanCensus c = jordan_structure(m, tolerance);
    if (c.defective_blocks == 1 && c.diagonalizable_blocks == 0) {
      out.defective[i] = true;
      ++out.defective_count;
    } else if (c.defective_blocks == 0 && c.diagonalizable_blocks == 2) {
      ++out.diagonalizable_count;
    }
  }
  return out;
}

LineGap line_gap(const ComplexVector& eigenvalues, double min_fraction, double threshold) {
  std::vector<double> im(eigenvalues.size());
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) im[i] = eigenvalues(i).imag();
  std::sort(im.begin(), im.end());
  const int n = static_cast<int>(im.size());
  const int min_side = std::max(1, static_cast<int>(std::ceil(min_fraction * n)));
  LineGap out;
  for (int i = min_side; i <= n - min_side; ++i) {
    const double width = im[i] - im[i - 1];
    if (width > out.width) {
      out.width = width;
      out.line = 0.5 * (im[i] + im[i - 1]);
      out.below = i;
    }
  }
  out.gapped = out.width > threshold;
  return out;
}

PowerLawFit fit_power_law(std::span<const double> sizes, std::span<const double> values) {
  if (sizes.size() != values.size()) throw DomainError("fit_power_law: size mismatch");
  if (sizes.size() < 3) throw DomainError("fit_power_law: need at least three points");
  const std::size_t n = sizes.size();
  Eigen::VectorXd x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(sizes[i] > 0.0) || !(values[i] > 0.0)) {
      throw DomainError("fit_power_law: non-positive value at index " + std::to_string(i));
    }
    x(i) = std::log(sizes[i]);
    y(i) = std::log(values[i]);
  }
  const double mx = x.mean(), my = y.mean();
  const Eigen::VectorXd dx = x.array() - mx, dy = y.array() - my;
  const double sxx = dx.squaredNorm();
  if (!(sxx > 0.0)) throw DomainError("fit_power_law: sizes must not all coincide");
  PowerLawFit fit;
  fit.exponent = dx.dot(dy) / sxx;
  fit.prefactor = std::exp(my - fit.exponent * mx);
  const double ss_res = (dy - fit.exponent * dx).squaredNorm();
  const double ss_tot = dy.squaredNorm();
  fit.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
  fit.stderr_exponent = n > 2 ? std::sqrt(ss_res / static_cast<double>(n - 2) / sxx) : 0.0;
  fit.window = {*std::min_element(sizes.begin(), sizes.end()), *std::max_element(sizes.begin(), sizes.end())};
  return fit;
}

double min_decay_rate(const ComplexMatrix& hamiltonian) {
  const ComplexVector w = eigenvalues(hamiltonian);
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < w.size(); ++i) best = std::min(best, 1.0 - 2.0 * w(i).imag());
  return best;
}

double edge_pair_angle(const ComplexMatrix& hamiltonian) {
  const ComplexVector w = eigenvalues(hamiltonian);
  if (w.size() < 2) throw DomainError("edge_pair_angle: need at least two eigenvalues");
  ComplexMatrix pair(hamiltonian.rows(), 2);
  pair.col(0) = inverse_iteration(hamiltonian, w(0));
  pair.col(1) = inverse_iteration(hamiltonian, w(1));
  return min_pairwise_angle(pair);
}

EpCandidate locate_edge_ep(int n_sites, double spacing, const DipoleOrientation& orientation, EdgeEpSearch search) {
  if (!(search.h_min > 0.0 && search.h_max > search.h_min) || search.coarse_points < 3) {
    throw DomainError("locate_edge_ep: invalid search window");
  }
  const ChainGeometry geometry{n_sites, spacing};
  geometry.validate_two_band();
  auto angle_at = [&](double h) {
    return edge_pair_angle(build_two_band(geometry, orientation, AlternationStrength{h, std::nullopt}));
  };

  std::vector<double> grid(search.coarse_points), angles(search.coarse_points);
  const double ratio = std::log(search.h_max / search.h_min) / (search.coarse_points - 1);
  for (int i = 0; i < search.coarse_points; ++i) grid[i] = search.h_min * std::exp(ratio * i);
  parallel_for(grid.size(), [&](std::size_t i) { angles[i] = angle_at(grid[i]); });

  const std::size_t i = std::min_element(angles.begin(), angles.end()) - angles.begin();
  const double lo = grid[i == 0 ? 0 : i - 1];
  const double hi = grid[std::min(i + 1, grid.size() - 1)];
  auto [h, angle] = golden_section_minimize(angle_at, lo, hi, search.resolution * grid[i]);
  if (angles[i] < angle) {
    h = grid[i];
    angle = angles[i];
  }
  if (!(angle < search.threshold)) {
    throw ConvergenceError("locate_edge_ep: no edge EP for N = " + std::to_string(n_sites) +
                           " (smallest edge-pair angle " + std::to_string(angle) + ")");
  }
  return {h, angle};
}

EdgeEpScaling h_edge_ep_scaling(std::span<const int> sizes, double spacing, const DipoleOrientation& orientation,
                                EdgeEpSearch search) {
  if (!std::is_sorted(sizes.begin(), sizes.end())) throw DomainError("h_edge_ep_scaling: sizes must ascend");
  EdgeEpScaling out;
  for (const int n : sizes) {
    if (n % 2 != 0) throw DomainError("h_edge_ep_scaling: N = " + std::to_string(n) + " is odd");
    const EpCandidate c = locate_edge_ep(n, spacing, orientation, search);
    out.sizes.push_back(n);
    out.h_edge_ep.push_back(c.h);
    out.angles.push_back(c.angle);
  }
  std::vector<double> x(out.sizes.begin(), out.sizes.end());
  out.fit = fit_power_law(x, out.h_edge_ep);
  return out;
}

}  // namespace altchain
