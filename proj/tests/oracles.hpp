// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

// Brute-force reference computations for the tests. Nothing here calls the
// library; each oracle takes a different route to the same quantity.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;

// p . G . p by explicit index contraction of the free-space dyadic, times 3 pi.
inline Complex hopping_by_contraction(double r, double theta) {
  const double p[3] = {std::cos(theta), std::sin(theta), 0.0};
  const double u[3] = {1.0, 0.0, 0.0};  // chain axis
  const Complex e = std::exp(Complex{0.0, r}) / (4.0 * kPi * r);
  const Complex a = e * (1.0 + Complex{0.0, 1.0} / r - 1.0 / (r * r));
  const Complex b = e * (-1.0 - Complex{0.0, 3.0} / r + 3.0 / (r * r));
  Complex sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) sum += p[i] * ((i == j ? a : 0.0) + b * u[i] * u[j]) * p[j];
  }
  return 3.0 * kPi * sum;
}

inline Matrix two_band(int n, double spacing, double theta, double h, bool onsite) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        m(i, j) = (i % 2 == 0 ? h : -h) + (onsite ? Complex{0.0, -0.5} : 0.0);
      } else {
        m(i, j) = -hopping_by_contraction(std::abs(i - j) * spacing, theta);
      }
    }
  }
  return m;
}

// Characteristic polynomial coefficients c_0..c_n (monic, c_n = 1) by the
// Faddeev-LeVerrier recursion.
inline std::vector<Complex> characteristic_polynomial(const Matrix& a) {
  const Eigen::Index n = a.rows();
  std::vector<Complex> c(n + 1);
  c[n] = 1.0;
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = a * m + c[n - k + 1] * Matrix::Identity(n, n);
    c[n - k] = -(a * m).trace() / static_cast<double>(k);
  }
  return c;
}

inline Complex horner(const std::vector<Complex>& c, Complex z) {
  Complex v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
  return v;
}

// All roots by Durand-Kerner iteration, then Newton polishing.
inline std::vector<Complex> polynomial_roots(const std::vector<Complex>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<Complex> z(n);
  for (int i = 0; i < n; ++i) z[i] = std::pow(Complex{0.4, 0.9}, i);
  for (int iter = 0; iter < 2000; ++iter) {
    double change = 0.0;
    for (int i = 0; i < n; ++i) {
      Complex denom = 1.0;
      for (int j = 0; j < n; ++j) {
        if (j != i) denom *= z[i] - z[j];
      }
      const Complex step = horner(c, z[i]) / denom;
      z[i] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-15) break;
  }
  std::vector<Complex> d(n);
  for (int k = 1; k <= n; ++k) d[k - 1] = static_cast<double>(k) * c[k];
  for (auto& r : z) {
    for (int it = 0; it < 5; ++it) {
      const Complex dp = horner(d, r);
      if (std::abs(dp) == 0.0) break;
      r -= horner(c, r) / dp;
    }
  }
  return z;
}

// Largest distance from any element of a to its nearest element of b.
inline double set_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double worst = 0.0;
  for (const auto& x : a) {
    double best = INFINITY;
    for (const auto& y : b) best = std::min(best, std::abs(x - y));
    worst = std::max(worst, best);
  }
  return worst;
}

// exp(-i t H) by Taylor series with scaling and squaring.
inline Matrix taylor_propagator(const Matrix& h, double t) {
  Matrix a = Complex{0.0, -t} * h;
  int squarings = 0;
  while (a.cwiseAbs().rowwise().sum().maxCoeff() > 0.25) {
    a /= 2.0;
    ++squarings;
  }
  const Eigen::Index n = h.rows();
  Matrix term = Matrix::Identity(n, n), sum = term;
  for (int k = 1; k < 40; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

// F(x) = -int_0^inf d/dt|psi_x|^2 (incoherent part) dt through the spectral
// form psi(t) = sum c_i e^{-i w_i t} v_i integrated term by term.
inline Eigen::VectorXd escape_spectral(const Matrix& h, const Vector& psi0) {
  Eigen::ComplexEigenSolver<Matrix> es(h);
  const Matrix& v = es.eigenvectors();
  const Vector& w = es.eigenvalues();
  const Vector c = v.partialPivLu().solve(psi0);
  const Eigen::Index n = h.rows();
  Matrix x = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Complex integral = 1.0 / (Complex{0.0, 1.0} * (w(i) - std::conj(w(j))));
      x += c(i) * std::conj(c(j)) * integral * v.col(i) * v.col(j).adjoint();
    }
  }
  const Matrix m = Complex{0.0, -0.5} * (h - h.adjoint());
  Eigen::VectorXd f(n);
  for (Eigen::Index k = 0; k < n; ++k) f(k) = -2.0 * (m.row(k) * x.col(k))(0).real();
  return f;
}

// sum_{n=1}^{terms} e^{inx}/n^p, explicitly.
inline Complex direct_series(int p, double x, long terms) {
  Complex s = 0.0;
  for (long n = terms; n >= 1; --n) s += std::polar(1.0, n * x) / std::pow(static_cast<double>(n), p);
  return s;
}

// Poisson summation at the magic angle: Im sum_{n != 0} G(|n|d) e^{iknd}
// = c1 (pi/d * #{m : |k + 2 pi m / d| < 1} - 1), c1 = 1/2.
inline double poisson_imag_magic(double k, double d) {
  int count = 0;
  for (int m = -50; m <= 50; ++m) {
    if (std::abs(k + 2.0 * kPi * m / d) < 1.0) ++count;
  }
  return 0.5 * (kPi / d * count - 1.0);
}

// Closed form of the real part at the magic angle from -ln|2 sin(x/2)|.
inline double log_real_magic(double k, double d) {
  return -std::log(std::abs(2.0 * (std::cos(k * d) - std::cos(d)))) / (2.0 * d);
}

}  // namespace oracle
