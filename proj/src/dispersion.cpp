// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

#include "altchain/dispersion.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "altchain/greens.hpp"

namespace altchain {
namespace {

// |1 - e^{ix}| below which x is treated as exactly on the light line.
constexpr double kLightLineGap = 1e-10;
constexpr int kMaxTailOrder = 40;

// Eulerian numbers A(k, i), k <= kMaxTailOrder, as doubles (exact up to 2^53,
// relative 1e-16 beyond, which is all the tail needs).
const std::array<std::array<double, kMaxTailOrder + 1>, kMaxTailOrder + 1>& eulerian_table() {
  static const auto table = [] {
    std::array<std::array<double, kMaxTailOrder + 1>, kMaxTailOrder + 1> a{};
    a[0][0] = 1.0;
    for (int k = 1; k <= kMaxTailOrder; ++k) {
      for (int i = 0; i < k; ++i) {
        const double keep = (i + 1) * a[k - 1][i];
        const double shift = i > 0 ? (k - i) * a[k - 1][i - 1] : 0.0;
        a[k][i] = keep + shift;
      }
    }
    return a;
  }();
  return table;
}

// sum_{j>=0} z^j j^k for |z| = 1, z != 1 (Abel sense).
Complex power_series_moment(int k, Complex z) {
  const Complex one_minus = 1.0 - z;
  if (k == 0) return 1.0 / one_minus;
  const auto& a = eulerian_table();
  Complex poly = 0.0;
  for (int i = k - 1; i >= 0; --i) poly = poly * z + a[k][i];
  return z * poly / std::pow(one_minus, k + 1);
}

double reduce_angle(double x) { return std::remainder(x, 2.0 * kPi); }

// Harmonic-like sum sum_{n=1}^{m} 1/n^p, summed small-to-large.
double zeta_partial(int p, long m) {
  double s = 0.0;
  for (long n = m; n >= 1; --n) s += std::pow(static_cast<double>(n), -p);
  return s;
}

SeriesSum light_line_sum(int p, double tolerance, long max_terms, double offset) {
  SeriesSum out;
  if (p == 1) {
    // sum cos(nx)/n = -ln|2 sin(x/2)| -> -ln|x|; sin terms average to 0.
    out.value = -std::log(offset);
    out.regularized = true;
    return out;
  }
  // Partial sum plus Euler-Maclaurin tail of sum_{n>=m} n^-p.
  const long m = std::min<long>(max_terms, 1000);
  const double md = static_cast<double>(m);
  out.value = zeta_partial(p, m - 1) + std::pow(md, 1 - p) / (p - 1) + 0.5 * std::pow(md, -p) +
              p * std::pow(md, -p - 1) / 12.0;
  out.terms = m;
  out.achieved_tolerance = p * (p + 1) * (p + 2) * std::pow(md, -p - 3) / 720.0;
  if (out.achieved_tolerance > tolerance) {
    throw ConvergenceError("polylog_unit_circle: light-line sum did not converge");
  }
  return out;
}

}  // namespace

SeriesSum polylog_unit_circle(int p, double x, double tolerance, long max_terms,
                              double light_line_offset) {
  if (p < 1 || p > 3) throw DomainError("polylog_unit_circle: order must be 1, 2 or 3");
  if (!std::isfinite(x)) throw DomainError("polylog_unit_circle: non-finite argument");
  if (!(tolerance > 0.0)) throw DomainError("polylog_unit_circle: tolerance must be positive");
  if (max_terms < 16) throw DomainError("polylog_unit_circle: max_terms too small");
  if (!(light_line_offset > 0.0)) throw DomainError("polylog_unit_circle: light-line offset must be positive");

  const double xr = reduce_angle(x);
  const double gap = 2.0 * std::abs(std::sin(0.5 * xr));
  if (gap < kLightLineGap) return light_line_sum(p, tolerance, max_terms, light_line_offset);

  const Complex z = std::polar(1.0, xr);
  const double target = 0.01 * tolerance;

  // Partial sums are extended incrementally as the cut m grows.
  long m = std::clamp<long>(static_cast<long>(std::ceil(40.0 / gap)), 64, max_terms);
  Complex partial = 0.0;
  long summed = 0;  // terms n = 1..summed are in `partial`
  SeriesSum best;
  best.achieved_tolerance = std::numeric_limits<double>::infinity();

  while (true) {
    for (long n = summed + 1; n < m; ++n) {
      partial += std::polar(std::pow(static_cast<double>(n), -p), reduce_angle(n * xr));
    }
    summed = m - 1;

    // Tail: z^m sum_k c_k M_k(z), c_k = f^(k)(m)/k! = (-1)^k binom(p+k-1,k) m^{-p-k}.
    // Individual moments can vanish (z = -1, even k), so truncation is steered
    // by the bound |M_k(z)| <= k!/|1-z|^{k+1} rather than by the terms.
    const double md = static_cast<double>(m);
    double coeff = std::pow(md, -p);
    double bound = coeff / gap;
    Complex tail = 0.0;
    double last = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int k = 0; k <= kMaxTailOrder; ++k) {
      if (k > 0) {
        coeff *= -static_cast<double>(p + k - 1) / (k * md);
        bound *= static_cast<double>(p + k - 1) / (md * gap);
      }
      if (bound > last) break;  // asymptotic series started to diverge
      tail += coeff * power_series_moment(k, z);
      last = bound;
      if (bound < target) {
        converged = true;
        break;
      }
    }
    const Complex value = partial + std::polar(1.0, reduce_angle(md * xr)) * tail;
    if (last < best.achieved_tolerance) {
      best.value = value;
      best.terms = m;
      best.achieved_tolerance = last;
    }
    if (converged || best.achieved_tolerance <= tolerance) return best;
    if (m >= max_terms) {
      throw ConvergenceError("polylog_unit_circle: tolerance " + std::to_string(tolerance) +
                             " not reached within " + std::to_string(max_terms) + " terms");
    }
    m = std::min(max_terms, 4 * m);
  }
}

bool on_light_line(double k, double spacing) {
  const double q = k * spacing;
  const double plus = 2.0 * std::abs(std::sin(0.5 * (spacing + q)));
  const double minus = 2.0 * std::abs(std::sin(0.5 * (spacing - q)));
  return plus < kLightLineGap || minus < kLightLineGap;
}

FourierSum discrete_ft(double k, double spacing, const DipoleOrientation& orientation,
                       double tolerance, long max_terms) {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw DomainError("discrete_ft: spacing must be positive");
  if (!std::isfinite(k)) throw DomainError("discrete_ft: non-finite momentum");
  orientation.validate();

  const auto coeffs = hopping_power_coefficients(orientation);
  const double q = k * spacing;
  FourierSum out;
  out.k = k;
  try {
    for (int p = 1; p <= 3; ++p) {
      const Complex c = coeffs[p - 1] / std::pow(spacing, p);
      if (std::abs(c) < 1e-300) continue;
      // Each series carries at most a sixth of the budget after scaling.
      const double series_tol = std::min(1.0, tolerance / (6.0 * std::abs(c)));
      for (const double x : {spacing + q, spacing - q}) {
        const SeriesSum s =
            polylog_unit_circle(p, x, series_tol, max_terms, spacing * kLightLineMomentumOffset);
        out.value += c * s.value;
        out.truncation = std::max(out.truncation, s.terms);
        out.achieved_tolerance += std::abs(c) * s.achieved_tolerance;
        out.regularized = out.regularized || s.regularized;
      }
    }
  } catch (const ConvergenceError& e) {
    throw FourierConvergenceError(std::string("discrete_ft: ") + e.what(), out);
  }
  return out;
}

TwoBandDispersion two_band_dispersion(double k, double h, double spacing,
                                      const DipoleOrientation& orientation, double tolerance) {
  if (std::abs(k * spacing) > kPi / 2 + 1e-12) {
    throw DomainError("two_band_dispersion: |k d| must not exceed pi/2");
  }
  if (!(h >= 0.0) || !std::isfinite(h)) throw DomainError("two_band_dispersion: h must be >= 0");
  TwoBandDispersion out;
  out.k = k;
  out.h = h;
  out.g_d = discrete_ft(k, spacing, orientation, tolerance).value;
  out.g_2d = discrete_ft(k, 2.0 * spacing, orientation, tolerance).value;
  const Complex s = out.g_d - out.g_2d;
  const Complex root = std::sqrt(s * s + h * h);
  out.omega_plus = -out.g_2d + root;
  out.omega_minus = -out.g_2d - root;
  return out;
}

void track_branches(std::span<TwoBandDispersion> path) {
  for (std::size_t i = 1; i < path.size(); ++i) {
    const auto& prev = path[i - 1];
    auto& cur = path[i];
    const double keep = std::abs(cur.omega_plus - prev.omega_plus) + std::abs(cur.omega_minus - prev.omega_minus);
    const double swap = std::abs(cur.omega_plus - prev.omega_minus) + std::abs(cur.omega_minus - prev.omega_plus);
    if (swap < keep) std::swap(cur.omega_plus, cur.omega_minus);
  }
}

double ep_condition(double k, double spacing, const DipoleOrientation& orientation, double real_tolerance) {
  if (on_light_line(k, spacing) || on_light_line(k, 2.0 * spacing)) return 0.0;
  const Complex s = discrete_ft(k, spacing, orientation, 1e-12).value -
                    discrete_ft(k, 2.0 * spacing, orientation, 1e-12).value;
  if (std::abs(s.real()) > real_tolerance) {
    throw DomainError("ep_condition: G_d - G_2d has real part " + std::to_string(s.real()) +
                      "; no real alternation reaches an EP");
  }
  return std::abs(s.imag());
}

double g_of_k(double k, double spacing) {
  const double q = std::abs(k * spacing);
  if (q > kPi + 1e-12) throw DomainError("g_of_k: |k d| must not exceed pi");
  const double edge = kPi / 2;
  if (std::abs(q - edge) < 1e-12) return 0.0;
  return q < edge ? kEpAlternation : -kEpAlternation;
}

std::vector<double> momentum_grid(int n_sites, double spacing) {
  if (n_sites < 2 || n_sites % 2 != 0) throw DomainError("momentum_grid: need an even number of sites");
  if (!(spacing > 0.0)) throw DomainError("momentum_grid: spacing must be positive");
  const int cells = n_sites / 2;
  std::vector<double> k;
  k.reserve(cells);
  for (int j = -(cells - 1) / 2; j <= cells / 2; ++j) {
    k.push_back(kPi * j / (cells * spacing));
  }
  return k;
}

}  // namespace altchain
