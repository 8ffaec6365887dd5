// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

#include "altchain/types.hpp"

namespace altchain {

/// Default absolute tolerance of lattice sums.
inline constexpr double kDefaultSumTolerance = 1e-8;
/// Upper bound on the number of explicitly summed terms.
inline constexpr long kMaxSumTerms = 10'000'000;
/// Alternation at which the long-range chain hits the EP phase transition
/// (d k0 = pi/2, magic angle): |G_d - G_2d| = 1/2 inside the light line.
inline constexpr double kEpAlternation = 0.5;

/// Result of a unit-circle series sum_{n>=1} e^{inx} / n^p.
struct SeriesSum {
  Complex value;
  long terms = 0;                 // explicitly summed terms
  double achieved_tolerance = 0;  // estimate of |value - exact|
  bool regularized = false;       // x = 0, p = 1: log divergence regularized
};

/// sum_{n>=1} e^{inx}/n^p for p in {1,2,3}: direct partial sum followed by
/// the asymptotic tail
///   sum_{n>=m} z^n f(n) ~ z^m sum_k f^(k)(m)/k! * sum_{j>=0} z^j j^k,
/// with the inner sums given by Eulerian polynomials. For x = 0 and p = 1
/// the series diverges: the real part is replaced by -ln(light_line_offset),
/// the asymptotic value a distance light_line_offset away from x = 0, the
/// imaginary part by the symmetric half-sum 0, and `regularized` is set.
/// Throws ConvergenceError when the tolerance cannot be met within max_terms.
SeriesSum polylog_unit_circle(int p, double x, double tolerance, long max_terms = kMaxSumTerms,
                              double light_line_offset = 1e-10);

/// Momentum offset (units k0) at which the log-divergent real part of the
/// lattice sums is evaluated on the light line. Using one offset in k for
/// every spacing keeps G~_d - G~_2d finite and zero there.
inline constexpr double kLightLineMomentumOffset = 1e-10;

/// Discrete Fourier transform of the hopping at spacing d (units 1/k0):
///   G~_d(k) = sum_{n != 0} e^{-ikdn} G(|n| d),   k in units of k0.
struct FourierSum {
  double k = 0;
  Complex value;
  long truncation = 0;
  double achieved_tolerance = 0;
  bool regularized = false;  // evaluated exactly on the light line |k| = k0
};

/// Thrown with the best partial result when the requested tolerance is out of reach.
class FourierConvergenceError : public ConvergenceError {
 public:
  FourierConvergenceError(const std::string& msg, FourierSum partial)
      : ConvergenceError(msg), partial_(partial) {}
  const FourierSum& partial() const { return partial_; }

 private:
  FourierSum partial_;
};

FourierSum discrete_ft(double k, double spacing, const DipoleOrientation& orientation,
                       double tolerance = kDefaultSumTolerance, long max_terms = kMaxSumTerms);

/// True when |k| sits on the light line k0 = 1 to within the snapping width of the sums.
bool on_light_line(double k, double spacing);

/// Two-band dispersion of the alternating chain,
///   omega_pm(k) = -G~_2d(k) pm sqrt((G~_d(k) - G~_2d(k))^2 + h^2),
/// principal square root. Requires |k d| <= pi/2.
struct TwoBandDispersion {
  double k = 0;
  double h = 0;
  Complex omega_plus;
  Complex omega_minus;
  Complex g_d;   // G~_d(k)
  Complex g_2d;  // G~_2d(k)
};

TwoBandDispersion two_band_dispersion(double k, double h, double spacing,
                                      const DipoleOrientation& orientation,
                                      double tolerance = kDefaultSumTolerance);

/// Relabels omega_plus/omega_minus along a path (e.g. in h at fixed k) so that
/// each branch moves continuously.
void track_branches(std::span<TwoBandDispersion> path);

/// EP alternation h_EP(k) = |G~_d - G~_2d| where the difference is purely
/// imaginary; 0 on the light line. Throws DomainError when the real part
/// exceeds `real_tolerance`.
double ep_condition(double k, double spacing, const DipoleOrientation& orientation,
                    double real_tolerance = 1e-6);

/// Piecewise off-diagonal amplitude g(k): +h_EP for |k| < pi/(2d), 0 on
/// |k| = pi/(2d), -h_EP beyond. Requires |k d| <= pi.
double g_of_k(double k, double spacing);

/// Quasi-momenta (units k0) of an open chain of n_sites emitters folded to
/// the two-site cell: k d = pi j / M, M = n_sites/2, one point per cell mode.
std::vector<double> momentum_grid(int n_sites, double spacing);

}  // namespace altchain
