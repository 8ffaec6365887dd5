// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

#include "altchain/hamiltonians.hpp"

#include <cmath>
#include <tuple>
#include <vector>

#include "altchain/greens.hpp"

namespace altchain {
namespace {

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("deformation parameter must lie in [0, 1]");
}

void add_onsite(ComplexMatrix& h, BuildOptions options) {
  if (options.onsite_decay) h.diagonal().array() += Complex{0.0, -kOnsiteHalfWidth};
}

}  // namespace

ComplexMatrix build_rddi(const ChainGeometry& geometry, const DipoleOrientation& orientation,
                         BuildOptions options) {
  geometry.validate();
  orientation.validate();
  const int n = geometry.n_sites;
  // One hopping per separation; the matrix is Toeplitz.
  std::vector<Complex> hop(n);
  for (int s = 1; s < n; ++s) hop[s] = -hopping_scalar(s * geometry.spacing, orientation);
  ComplexMatrix h(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) h(i, j) = hop[std::abs(i - j)];
  }
  add_onsite(h, options);
  return h;
}

ComplexMatrix build_two_band(const ChainGeometry& geometry, const DipoleOrientation& orientation,
                             const AlternationStrength& alternation, BuildOptions options) {
  geometry.validate_two_band();
  alternation.validate();
  ComplexMatrix h = build_rddi(geometry, orientation, options);
  for (int i = 0; i < geometry.n_sites; ++i) h(i, i) += (i % 2 == 0) ? alternation.h : -alternation.h;
  return h;
}

ComplexMatrix strip_sublattice_common(const ComplexMatrix& hamiltonian) {
  ComplexMatrix out = hamiltonian;
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      if (i != j && (i - j) % 2 == 0) out(i, j) = 0.0;
    }
  }
  return out;
}

std::pair<Complex, Complex> eigenvalues_2x2(const Matrix2c& m) {
  const Complex mean = 0.5 * (m(0, 0) + m(1, 1));
  const Complex half_diff = 0.5 * (m(0, 0) - m(1, 1));
  const Complex root = std::sqrt(half_diff * half_diff + m(0, 1) * m(1, 0));
  return {mean + root, mean - root};
}

BlochSample build_bloch(double k, const AlternationStrength& alternation, double spacing,
                        const DipoleOrientation& orientation, double tolerance) {
  if (std::abs(k * spacing) > kPi / 2 + 1e-12) throw DomainError("build_bloch: |k d| must not exceed pi/2");
  alternation.validate();
  const FourierSum gd = discrete_ft(k, spacing, orientation, tolerance);
  const FourierSum g2d = discrete_ft(k, 2.0 * spacing, orientation, tolerance);
  const Complex s = gd.value - g2d.value;
  const double h = alternation.h;
  BlochSample out;
  out.k = k;
  out.matrix << h - g2d.value, -std::polar(1.0, -k * spacing) * s,
      -std::polar(1.0, k * spacing) * s, -h - g2d.value;
  std::tie(out.omega_plus, out.omega_minus) = eigenvalues_2x2(out.matrix);
  out.achieved_tolerance = gd.achieved_tolerance + g2d.achieved_tolerance;
  return out;
}

Matrix2c build_stripped_bloch(double k, const AlternationStrength& alternation, double spacing,
                              const DipoleOrientation& orientation, double tolerance) {
  Matrix2c m = build_bloch(k, alternation, spacing, orientation, tolerance).matrix;
  m(0, 0) = alternation.h;
  m(1, 1) = -alternation.h;
  return m;
}

Matrix2c build_deformed_bloch(double k, double lambda, const AlternationStrength& alternation,
                              double spacing, const DipoleOrientation& orientation, double tolerance) {
  check_lambda(lambda);
  return (1.0 - lambda) * build_stripped_bloch(k, alternation, spacing, orientation, tolerance) +
         lambda * deformation_target();
}

ComplexMatrix build_deformed_real_space(const ChainGeometry& geometry, double lambda,
                                        const AlternationStrength& alternation,
                                        const DipoleOrientation& orientation, BuildOptions options) {
  check_lambda(lambda);
  ComplexMatrix h = (1.0 - lambda) * strip_sublattice_common(build_two_band(geometry, orientation, alternation));
  const Matrix2c target = deformation_target();
  for (int c = 0; c < geometry.n_cells(); ++c) h.block<2, 2>(2 * c, 2 * c) += lambda * target;
  add_onsite(h, options);
  return h;
}

Matrix2c build_short_range_ssh(double k, double g, double h, double spacing) {
  if (std::abs(k * spacing) > kPi + 1e-12) throw DomainError("build_short_range_ssh: |k d| must not exceed pi");
  const double q = k * spacing;
  return h * pauli_z() - kI * g * std::cos(q) * pauli_x() - kI * g * std::sin(q) * pauli_y();
}

}  // namespace altchain
