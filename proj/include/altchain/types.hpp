// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>

#include <Eigen/Dense>

#include "altchain/errors.hpp"

namespace altchain {

// Units throughout: energies and rates in units of the single-emitter
// spontaneous emission rate gamma0, lengths in units of 1/k0, hbar = 1.

template <typename Scalar>
using ComplexMatrixX = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using ComplexVectorX = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using ComplexMatrix = ComplexMatrixX<double>;
using ComplexVector = ComplexVectorX<double>;
using Matrix2c = Eigen::Matrix2cd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Angle between the transition dipole and the chain axis.
struct DipoleOrientation {
  double theta = 0.0;

  /// arccos(1/sqrt(3)): every (1 - 3 cos^2 theta) term vanishes and the
  /// hopping decays as 1/r.
  static DipoleOrientation magic() { return {std::acos(1.0 / std::sqrt(3.0))}; }

  double cos2() const { return std::cos(theta) * std::cos(theta); }
  double sin2() const { return std::sin(theta) * std::sin(theta); }

  void validate() const {
    if (!(theta >= 0.0 && theta <= kPi / 2 + 1e-15)) {
      throw DomainError("dipole angle must lie in [0, pi/2]");
    }
  }
};

/// Open chain of equally spaced emitters; spacing is d*k0.
struct ChainGeometry {
  int n_sites = 2;
  double spacing = kPi / 2;

  void validate() const {
    if (n_sites < 2) throw DomainError("chain needs at least two sites");
    if (!(spacing > 0.0) || !std::isfinite(spacing)) throw DomainError("spacing must be positive");
  }
  void validate_two_band() const {
    validate();
    if (n_sites % 2 != 0) throw DomainError("two-band chain needs an even number of sites");
  }
  int n_cells() const { return n_sites / 2; }
};

/// Amplitude h of the alternating detuning +h, -h, +h, ... (site 1 first).
struct AlternationStrength {
  double h = 0.0;
  std::optional<double> alpha;  // set when h = N^-alpha

  static AlternationStrength from_exponent(int n_sites, double alpha) {
    return {std::pow(static_cast<double>(n_sites), -alpha), alpha};
  }
  void validate() const {
    if (!(h >= 0.0) || !std::isfinite(h)) throw DomainError("alternation h must be finite and >= 0");
  }
};

}  // namespace altchain
