// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "altchain/types.hpp"

namespace altchain {

/// i H for a short-range SSH-form Bloch matrix; throws DomainError when the
/// chiral relation sigma_z (iH) sigma_z = -(iH)^dagger fails beyond 1e-10.
Matrix2c hermitize(const Matrix2c& bloch);

/// Off-diagonal element q(k) = g e^{-ikd} / sqrt(g^2 - h^2) of the flat-band
/// operator Q(k). Throws DomainError when g^2 <= h^2 (line gap closed).
Complex q_operator(double g, double h, double k, double spacing);

/// Q(k) = [[0, q], [conj(q), 0]]: Hermitian and chiral.
Matrix2c q_matrix(double g, double h, double k, double spacing);

struct WindingResult {
  double value = 0;
  double residual = 0;  // distance of value to the nearest integer
  bool defined = false;
  double max_jump = 0;  // largest adjacent phase step, including the wrap
  std::vector<std::size_t> discontinuities;  // step j joins samples j and j+1; n-1 is the wrap
};

/// Phase-unwrapped winding of q around a closed loop. Samples run along the
/// loop; the last sample should coincide with the first. Defined only when
/// every step (and the wrap) turns by less than pi/4, |q| > 1e-6 everywhere,
/// and the result is within 1e-4 of an integer.
WindingResult winding_number(std::span<const Complex> samples);

/// q(k) of the short-range model on kd in [-pi, pi], endpoints included.
std::vector<Complex> short_range_q_samples(double g, double h, double spacing, int intervals);

/// q(k) of the long-range symbol with g(k) = Im(G~_d - G~_2d) on the
/// midpoints of `intervals` cells of kd in [-pi/2, pi/2]; q = 0 where the
/// line gap is closed (g^2 <= h^2).
std::vector<Complex> long_range_q_samples(double h, double spacing, const DipoleOrientation& orientation,
                                          int intervals);

}  // namespace altchain
