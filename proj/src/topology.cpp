// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

#include "altchain/topology.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "altchain/dispersion.hpp"
#include "altchain/hamiltonians.hpp"

namespace altchain {
namespace {

constexpr double kMaxPhaseStep = kPi / 4;
constexpr double kMinModulus = 1e-6;
constexpr double kQuantization = 1e-4;

}  // namespace

Matrix2c hermitize(const Matrix2c& bloch) {
  const Matrix2c ih = kI * bloch;
  const Matrix2c sz = pauli_z();
  const double residual = (sz * ih * sz + ih.adjoint()).cwiseAbs().maxCoeff();
  if (residual > 1e-10) throw DomainError("hermitize: input not in SSH form (chiral residual " + std::to_string(residual) + ")");
  return ih;
}

Complex q_operator(double g, double h, double k, double spacing) {
  const double gap2 = g * g - h * h;
  if (!(gap2 > 0.0)) throw DomainError("q_operator: line gap closed; Q undefined");
  return g * std::polar(1.0, -k * spacing) / std::sqrt(gap2);
}

Matrix2c q_matrix(double g, double h, double k, double spacing) {
  const Complex q = q_operator(g, h, k, spacing);
  return (Matrix2c() << 0.0, q, std::conj(q), 0.0).finished();
}

WindingResult winding_number(std::span<const Complex> samples) {
  WindingResult out;
  const std::size_t n = samples.size();
  if (n < 3) throw DomainError("winding_number: need at least three samples");
  double total = 0.0;
  bool vanishing = false;
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(samples[j]) <= kMinModulus) vanishing = true;
  }
  // Steps j -> j+1 along the loop; the wrap closes it (zero for a periodic sample set).
  for (std::size_t j = 0; j < n; ++j) {
    const Complex a = samples[j], b = samples[(j + 1) % n];
    const double step = (std::abs(a) > 0.0 && std::abs(b) > 0.0) ? std::arg(b / a) : kPi;
    if (j + 1 < n) total += step;
    out.max_jump = std::max(out.max_jump, std::abs(step));
    if (std::abs(step) >= kMaxPhaseStep || std::abs(a) <= kMinModulus) out.discontinuities.push_back(j);
  }
  out.value = total / (2.0 * kPi);
  out.residual = std::abs(out.value - std::round(out.value));
  out.defined = !vanishing && out.max_jump < kMaxPhaseStep && out.residual < kQuantization;
  return out;
}

std::vector<Complex> short_range_q_samples(double g, double h, double spacing, int intervals) {
  if (intervals < 2) throw DomainError("short_range_q_samples: need at least two intervals");
  std::vector<Complex> q(intervals + 1);
  for (int j = 0; j <= intervals; ++j) {
    const double kd = -kPi + 2.0 * kPi * j / intervals;
    q[j] = q_operator(g, h, kd / spacing, spacing);
  }
  return q;
}

std::vector<Complex> long_range_q_samples(double h, double spacing, const DipoleOrientation& orientation,
                                          int intervals) {
  if (intervals < 2) throw DomainError("long_range_q_samples: need at least two intervals");
  std::vector<Complex> q(intervals);
  for (int j = 0; j < intervals; ++j) {
    const double kd = -kPi / 2 + kPi * (j + 0.5) / intervals;
    const double k = kd / spacing;
    const double g = (discrete_ft(k, spacing, orientation).value - discrete_ft(k, 2.0 * spacing, orientation).value).imag();
    q[j] = g * g > h * h ? q_operator(g, h, k, spacing) : Complex{0.0, 0.0};
  }
  return q;
}

}  // namespace altchain
