// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>

#include "altchain/dispersion.hpp"
#include "altchain/types.hpp"

namespace altchain {

struct BuildOptions {
  /// Adds the uniform on-site decay -i gamma0/2 to every diagonal entry.
  bool onsite_decay = false;
};

inline Matrix2c pauli_x() { return (Matrix2c() << 0, 1, 1, 0).finished(); }
inline Matrix2c pauli_y() { return (Matrix2c() << 0, -kI, kI, 0).finished(); }
inline Matrix2c pauli_z() { return (Matrix2c() << 1, 0, 0, -1).finished(); }

/// Endpoint H'' of the deformation H(lambda) = (1 - lambda) H' + lambda H''.
/// -i sigma_x keeps the imaginary line gap of H' open for every lambda when
/// g(k) > 0 inside the light line.
inline Matrix2c deformation_target() { return -kI * pauli_x(); }

/// Open-chain RDDI Hamiltonian: zero diagonal, H_ij = -G(|i - j| d).
/// Complex symmetric.
ComplexMatrix build_rddi(const ChainGeometry& geometry, const DipoleOrientation& orientation,
                         BuildOptions options = {});

/// RDDI plus the alternating detuning +h, -h, ... (site 1 carries +h).
ComplexMatrix build_two_band(const ChainGeometry& geometry, const DipoleOrientation& orientation,
                             const AlternationStrength& alternation, BuildOptions options = {});

/// Removes the sublattice-common (sigma_0) part: every off-diagonal entry at an
/// even site separation is zeroed. Diagonal and odd separations are kept.
ComplexMatrix strip_sublattice_common(const ComplexMatrix& hamiltonian);

/// Two-site-cell Bloch sample in the cell gauge, basis (A, B) = (odd, even
/// sites counted from 1):
///   [[ h - G~_2d,          -e^{-ikd}(G~_d - G~_2d) ],
///    [ -e^{ikd}(G~_d - G~_2d),  -h - G~_2d          ]]
struct BlochSample {
  double k = 0;
  Matrix2c matrix;
  Complex omega_plus;
  Complex omega_minus;
  double achieved_tolerance = 0;
};

BlochSample build_bloch(double k, const AlternationStrength& alternation, double spacing,
                        const DipoleOrientation& orientation, double tolerance = kDefaultSumTolerance);

/// Eigenvalues of a 2x2 matrix from its characteristic polynomial,
/// m +- sqrt(((a - d)/2)^2 + bc) with the principal root; first is the + branch.
std::pair<Complex, Complex> eigenvalues_2x2(const Matrix2c& m);

/// sigma_0-stripped Bloch matrix H'_TB(k) = h sigma_z + off-diagonals of build_bloch.
Matrix2c build_stripped_bloch(double k, const AlternationStrength& alternation, double spacing,
                              const DipoleOrientation& orientation,
                              double tolerance = kDefaultSumTolerance);

/// (1 - lambda) H'_TB(k) + lambda * deformation_target().
Matrix2c build_deformed_bloch(double k, double lambda, const AlternationStrength& alternation,
                              double spacing, const DipoleOrientation& orientation,
                              double tolerance = kDefaultSumTolerance);

/// Real-space counterpart of build_deformed_bloch on an open chain:
/// (1 - lambda) * strip(H_TB) + lambda * (direct sum of deformation_target()
/// over the cells (1,2), (3,4), ...).
ComplexMatrix build_deformed_real_space(const ChainGeometry& geometry, double lambda,
                                        const AlternationStrength& alternation,
                                        const DipoleOrientation& orientation, BuildOptions options = {});

/// Short-range SSH analog h sigma_z - i g cos(kd) sigma_x - i g sin(kd) sigma_y.
Matrix2c build_short_range_ssh(double k, double g, double h, double spacing);

}  // namespace altchain
