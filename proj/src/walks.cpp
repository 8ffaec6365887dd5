// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

#include "altchain/walks.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace altchain {
namespace {

void check_square(const ComplexMatrix& h, const char* who) {
  if (h.rows() != h.cols() || h.rows() < 1) throw DomainError(std::string(who) + ": need a non-empty square matrix");
}

void check_state(const ComplexMatrix& h, const WalkState& s, const char* who) {
  check_square(h, who);
  if (s.amplitudes.size() != h.rows()) throw DomainError(std::string(who) + ": state and Hamiltonian sizes differ");
}

// 2 Re(conj(psi_x) (M psi)_x) for every x.
Eigen::VectorXd incoherent_rate(const ComplexMatrix& m, const ComplexVector& psi) {
  return 2.0 * (psi.conjugate().cwiseProduct(m * psi)).real();
}

}  // namespace

WalkState make_w_state(int n_sites) {
  if (n_sites < 1) throw DomainError("make_w_state: need at least one site");
  return {ComplexVector::Constant(n_sites, 1.0 / std::sqrt(static_cast<double>(n_sites))), 0.0};
}

ComplexMatrix propagator(const ComplexMatrix& hamiltonian, double t) {
  check_square(hamiltonian, "propagator");
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("propagator: time must be finite and >= 0");
  if (t == 0.0) return ComplexMatrix::Identity(hamiltonian.rows(), hamiltonian.cols());
  const ComplexMatrix generator = Complex{0.0, -t} * hamiltonian;
  return generator.exp();
}

WalkState propagate(const ComplexMatrix& hamiltonian, const WalkState& initial, double t) {
  check_state(hamiltonian, initial, "propagate");
  if (t == 0.0) return initial;
  return {propagator(hamiltonian, t) * initial.amplitudes, initial.time + t};
}

ComplexMatrix hermitian_part(const ComplexMatrix& hamiltonian) { return 0.5 * (hamiltonian + hamiltonian.adjoint()); }

ComplexMatrix anti_hermitian_part(const ComplexMatrix& hamiltonian) {
  return Complex{0.0, -0.5} * (hamiltonian - hamiltonian.adjoint());
}

ComplexMatrix solve_lyapunov(const ComplexMatrix& a, const ComplexMatrix& c) {
  check_square(a, "solve_lyapunov");
  if (c.rows() != a.rows() || c.cols() != a.cols()) throw DomainError("solve_lyapunov: size mismatch");
  const Eigen::Index n = a.rows();
  Eigen::ComplexSchur<ComplexMatrix> schur(a);
  if (schur.info() != Eigen::Success) throw ConvergenceError("solve_lyapunov: Schur decomposition did not converge");
  const ComplexMatrix& t = schur.matrixT();
  const ComplexMatrix& u = schur.matrixU();
  const ComplexMatrix d = u.adjoint() * c * u;

  // T Y + Y T^dagger = D, column j from the last:
  //   (T + conj(T_jj)) y_j = d_j - sum_{k>j} conj(T_jk) y_k.
  ComplexMatrix y(n, n);
  const double scale = std::max(1.0, a.norm());
  for (Eigen::Index j = n - 1; j >= 0; --j) {
    ComplexVector rhs = d.col(j);
    if (j + 1 < n) rhs.noalias() -= y.rightCols(n - j - 1) * t.row(j).tail(n - j - 1).adjoint();
    ComplexMatrix shifted = t;
    shifted.diagonal().array() += std::conj(t(j, j));
    const double pivot = shifted.diagonal().cwiseAbs().minCoeff();
    if (!(pivot > 1e-15 * scale)) {
      throw DomainError("solve_lyapunov: lambda_i + conj(lambda_j) vanishes; no unique solution");
    }
    y.col(j) = shifted.triangularView<Eigen::Upper>().solve(rhs);
  }
  return u * y * u.adjoint();
}

EscapeDistribution escape_distribution(const ComplexMatrix& hamiltonian, const WalkState& initial,
                                       EscapeOptions options) {
  check_state(hamiltonian, initial, "escape_distribution");
  if (!(options.dt > 0.0)) throw DomainError("escape_distribution: dt must be positive");
  if (!(options.start_time >= initial.time)) throw DomainError("escape_distribution: start_time precedes the initial state");
  if (!(options.t_max > options.start_time)) throw DomainError("escape_distribution: t_max must exceed start_time");

  const ComplexMatrix m = anti_hermitian_part(hamiltonian);
  WalkState state = propagate(hamiltonian, initial, options.start_time - initial.time);

  // Composite Simpson on an even number of intervals; the step is shrunk to fit.
  long intervals = static_cast<long>(std::ceil((options.t_max - options.start_time) / options.dt - 1e-9));
  intervals += intervals % 2;
  const double step = (options.t_max - options.start_time) / static_cast<double>(intervals);
  const ComplexMatrix u = propagator(hamiltonian, step);

  const Eigen::Index n = hamiltonian.rows();
  Eigen::VectorXd simpson = Eigen::VectorXd::Zero(n), trapezoid = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd first = incoherent_rate(m, state.amplitudes);
  ComplexVector psi = state.amplitudes;
  long done = 0;
  double time = options.start_time;
  while (done < intervals) {
    const ComplexVector mid = u * psi;
    const ComplexVector end = u * mid;
    const Eigen::VectorXd f_mid = incoherent_rate(m, mid);
    const Eigen::VectorXd f_end = incoherent_rate(m, end);
    simpson += (step / 3.0) * (first + 4.0 * f_mid + f_end);
    trapezoid += (step / 2.0) * (first + 2.0 * f_mid + f_end);
    psi = end;
    first = f_end;
    done += 2;
    time = options.start_time + step * static_cast<double>(done);
    if (psi.squaredNorm() < options.residual_threshold) break;
  }

  EscapeDistribution out;
  out.start_time = options.start_time;
  out.end_time = time;
  out.residual_norm2 = psi.squaredNorm();
  out.values = -simpson;
  out.quadrature_error = (simpson - trapezoid).cwiseAbs().sum();

  if (options.tail == TailMode::kNone) {
    if (out.residual_norm2 > options.residual_threshold) {
      throw ConvergenceError("escape_distribution: residual norm " + std::to_string(out.residual_norm2) +
                             " at t_max exceeds threshold; increase t_max");
    }
    out.quadrature_error += out.residual_norm2;
    return out;
  }

  // int_T^inf psi psi^dagger dt = X with (-iH) X + X (-iH)^dagger = -psi psi^dagger.
  const ComplexMatrix a = Complex{0.0, -1.0} * hamiltonian;
  const ComplexMatrix x = solve_lyapunov(a, -psi * psi.adjoint());
  const Eigen::VectorXd tail = -2.0 * (m * x).diagonal().real();
  out.values += tail;
  out.tail_sum = tail.sum();
  return out;
}

CurrentDecomposition current_decomposition(const ComplexMatrix& hamiltonian, const WalkState& state) {
  check_state(hamiltonian, state, "current_decomposition");
  if (!(state.amplitudes.norm() > 0.0)) throw DomainError("current_decomposition: zero state");
  const ComplexVector& psi = state.amplitudes;
  CurrentDecomposition out;
  out.coherent = 2.0 * (psi.conjugate().cwiseProduct(hermitian_part(hamiltonian) * psi)).imag();
  out.incoherent = incoherent_rate(anti_hermitian_part(hamiltonian), psi);
  out.density_rate = 2.0 * (psi.conjugate().cwiseProduct(Complex{0.0, -1.0} * (hamiltonian * psi))).real();
  return out;
}

Eigen::MatrixXd density_map(const ComplexMatrix& hamiltonian, const WalkState& initial,
                            std::span<const double> t_grid) {
  check_state(hamiltonian, initial, "density_map");
  if (!std::is_sorted(t_grid.begin(), t_grid.end())) throw DomainError("density_map: time grid must ascend");
  if (!t_grid.empty() && t_grid.front() < initial.time) throw DomainError("density_map: time grid starts before the initial state");
  Eigen::MatrixXd out(static_cast<Eigen::Index>(t_grid.size()), hamiltonian.rows());
  ComplexVector psi = initial.amplitudes;
  double time = initial.time;
  // Uniform grids reuse one step propagator.
  ComplexMatrix cached;
  double cached_step = -1.0;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double step = t_grid[i] - time;
    if (step > 0.0) {
      if (std::abs(step - cached_step) > 1e-12 * std::max(1.0, step)) {
        cached = propagator(hamiltonian, step);
        cached_step = step;
      }
      psi = cached * psi;
      time = t_grid[i];
    }
    out.row(static_cast<Eigen::Index>(i)) = psi.cwiseAbs2().transpose();
  }
  return out;
}

}  // namespace altchain
