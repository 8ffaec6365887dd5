// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

#include "altchain/greens.hpp"

#include <cmath>

namespace altchain {
namespace {

// cos(r)/r^2 - sin(r)/r^3, which tends to -1/3 as r -> 0. The direct form
// loses all digits below r ~ 1e-4, so small arguments use the Taylor series
//   sum_{n>=1} (-1)^n 2n r^{2n-2} / (2n+1)!.
double cos_sin_combination(double r) {
  if (r > 0.5) return std::cos(r) / (r * r) - std::sin(r) / (r * r * r);
  const double r2 = r * r;
  double term = -2.0 / 6.0;  // n = 1
  double sum = term;
  for (int n = 2; n < 20; ++n) {
    // ratio of consecutive terms: -r^2 * (2n) / ((2n-2) * 2n * (2n+1))
    term *= -r2 * (2.0 * n) / ((2.0 * n - 2.0) * (2.0 * n) * (2.0 * n + 1.0));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

struct RadialParts {
  Complex transverse;    // coefficient of the identity
  Complex longitudinal;  // coefficient of r^ (x) r^
};

// e^{ir}(1/r + i/r^2 - 1/r^3) and e^{ir}(-1/r - 3i/r^2 + 3/r^3).
RadialParts radial_parts(double r) {
  const double c = std::cos(r), s = std::sin(r);
  const double f = cos_sin_combination(r);
  const double r2 = r * r, r3 = r2 * r;
  const Complex a{c / r - s / r2 - c / r3, s / r + f};
  const Complex b{-c / r + 3.0 * s / r2 + 3.0 * c / r3, -s / r - 3.0 * f};
  return {a, b};
}

}  // namespace

Eigen::Matrix3cd green_tensor(const Eigen::Vector3d& separation) {
  const double r = separation.norm();
  if (!(r > 0.0)) {
    throw DomainError("green_tensor: zero separation (on-site term diverges)");
  }
  const Eigen::Vector3d unit = separation / r;
  const auto [a, b] = radial_parts(r);
  const double prefactor = 1.0 / (4.0 * kPi);
  Eigen::Matrix3cd g = (prefactor * a) * Eigen::Matrix3cd::Identity();
  g += (prefactor * b) * (unit * unit.transpose()).cast<Complex>();
  return g;
}

Eigen::Vector3d dipole_direction(const DipoleOrientation& orientation) {
  return {std::cos(orientation.theta), std::sin(orientation.theta), 0.0};
}

std::array<Complex, 3> hopping_power_coefficients(const DipoleOrientation& orientation) {
  const double s2 = orientation.sin2();
  const double anisotropy = 1.0 - 3.0 * orientation.cos2();
  return {Complex{0.75 * s2, 0.0}, Complex{0.0, 0.75 * anisotropy}, Complex{-0.75 * anisotropy, 0.0}};
}

Complex hopping_scalar(double r, const DipoleOrientation& orientation) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw DomainError("hopping_scalar: distance must be positive and finite");
  }
  const double s2 = orientation.sin2();
  const double anisotropy = 1.0 - 3.0 * orientation.cos2();
  const double c = std::cos(r), s = std::sin(r);
  const double re = s2 * c / r - anisotropy * (s / (r * r) + c / (r * r * r));
  const double im = s2 * s / r + anisotropy * cos_sin_combination(r);
  return 0.75 * Complex{re, im};
}

}  // namespace altchain
