// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "altchain/types.hpp"

namespace altchain {

struct WalkState {
  ComplexVector amplitudes;
  double time = 0;  // units 1/gamma0

  double norm2() const { return amplitudes.squaredNorm(); }
};

/// Equal-amplitude superposition 1/sqrt(N) over all sites.
WalkState make_w_state(int n_sites);

/// exp(-i H t) by Pade scaling-and-squaring; valid at exceptional points.
ComplexMatrix propagator(const ComplexMatrix& hamiltonian, double t);

/// State at initial.time + t.
WalkState propagate(const ComplexMatrix& hamiltonian, const WalkState& initial, double t);

/// Hermitian parts R = (H + H^dagger)/2 and M = (H - H^dagger)/(2i).
ComplexMatrix hermitian_part(const ComplexMatrix& hamiltonian);
ComplexMatrix anti_hermitian_part(const ComplexMatrix& hamiltonian);

/// Solves A X + X A^dagger = C by complex Schur (Bartels-Stewart).
/// Requires lambda_i(A) + conj(lambda_j(A)) != 0 for all i, j.
ComplexMatrix solve_lyapunov(const ComplexMatrix& a, const ComplexMatrix& c);

enum class TailMode {
  kLyapunov,  // integral beyond the last step evaluated exactly
  kNone,      // error unless the residual norm is below threshold
};

struct EscapeOptions {
  double start_time = 0.0;
  double t_max = 1000.0;
  double dt = 0.01;
  double residual_threshold = 1e-8;  // stepping stops once ||psi||^2 drops below
  TailMode tail = TailMode::kLyapunov;
};

/// F(x, t0) = -int_{t0}^inf <psi(t)| {|x><x|, M} |psi(t)> dt, M = Im H.
/// Entries may be negative.
struct EscapeDistribution {
  Eigen::VectorXd values;
  double start_time = 0;
  double end_time = 0;             // last quadrature node
  double quadrature_error = 0;     // sum_x |Simpson - trapezoid|, plus the residual in kNone mode
  double residual_norm2 = 0;       // ||psi(end_time)||^2
  double tail_sum = 0;             // sum_x of the part beyond end_time

  double sum() const { return values.sum(); }
};

EscapeDistribution escape_distribution(const ComplexMatrix& hamiltonian, const WalkState& initial,
                                       EscapeOptions options = {});

/// d|psi_x|^2/dt = coherent + incoherent with
///   coherent_x   = 2 Im(conj(psi_x) (R psi)_x)   (sums to zero),
///   incoherent_x = 2 Re(conj(psi_x) (M psi)_x)   (sums to d||psi||^2/dt).
struct CurrentDecomposition {
  Eigen::VectorXd coherent;
  Eigen::VectorXd incoherent;
  Eigen::VectorXd density_rate;
};

CurrentDecomposition current_decomposition(const ComplexMatrix& hamiltonian, const WalkState& state);

/// Row i holds |<x|psi(t_i)>|^2; t_grid ascending and not before initial.time.
Eigen::MatrixXd density_map(const ComplexMatrix& hamiltonian, const WalkState& initial,
                            std::span<const double> t_grid);

}  // namespace altchain
