// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>

#include <Eigen/Core>

#include "altchain/types.hpp"

namespace altchain {

/// Free-space dyadic Green's tensor at the emitter frequency, separation in
/// units of 1/k0 (so k0 = 1):
///
///   G(r) = e^{ir} / (4 pi r^3) [ (r^2 + i r - 1) 1 + (-r^2 - 3 i r + 3) r^ (x) r^ ]
///
/// Small-r cancellations in the imaginary part are evaluated by series.
/// Throws DomainError for a zero separation.
Eigen::Matrix3cd green_tensor(const Eigen::Vector3d& separation);

/// Scalar hopping G(r) = 3 pi P^* . G(r x^) . P^ for two emitters a distance r
/// apart on the chain axis, in gamma0 units: lim_{r->0} Im G(r) = 1/2.
/// The RDDI matrix element between sites i != j is -G(|r_i - r_j|).
Complex hopping_scalar(double r, const DipoleOrientation& orientation);

/// Coefficients c_p of G(r) = e^{ir} (c_1/r + c_2/r^2 + c_3/r^3).
std::array<Complex, 3> hopping_power_coefficients(const DipoleOrientation& orientation);

/// Unit-norm dipole direction in the x-y plane at angle theta to the chain.
Eigen::Vector3d dipole_direction(const DipoleOrientation& orientation);

/// On-site decay amplitude gamma0/2, i.e. lim_{r->0} Im G(r).
inline constexpr double kOnsiteHalfWidth = 0.5;

}  // namespace altchain
