// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "altchain/hamiltonians.hpp"
#include "altchain/walks.hpp"
#include "oracles.hpp"

using namespace altchain;

namespace {
const DipoleOrientation kMagic = DipoleOrientation::magic();
constexpr double kD = kPi / 2;

ComplexMatrix chain(int n, double h) { return build_two_band({n, kD}, kMagic, {h, std::nullopt}, {true}); }
}  // namespace

TEST_SUITE("walks") {

TEST_CASE("propagator matches the Taylor series") {
  for (int n : {2, 4, 6}) {
    const ComplexMatrix h = chain(n, 0.3);
    for (double t : {0.1, 1.0, 7.5}) {
      CHECK((propagator(h, t) - oracle::taylor_propagator(h, t)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  CHECK(propagator(chain(4, 0.1), 0.0).isIdentity());
  CHECK_THROWS_AS(propagator(chain(4, 0.1), -1.0), DomainError);
}

TEST_CASE("Jordan-block propagator grows linearly") {
  // exp(-i t J) for J = [[l, 1], [0, l]] is e^{-i l t} [[1, -i t], [0, 1]].
  const Complex l{0.2, -0.5};
  ComplexMatrix j(2, 2);
  j << l, 1.0, 0.0, l;
  const double t = 3.0;
  ComplexMatrix expected(2, 2);
  expected << 1.0, Complex{0.0, -t}, 0.0, 1.0;
  expected *= std::exp(Complex{0.0, -t} * l);
  CHECK((propagator(j, t) - expected).norm() < 1e-13);
}

TEST_CASE("W state and propagation bookkeeping") {
  const WalkState w = make_w_state(8);
  CHECK(w.norm2() == doctest::Approx(1.0));
  const WalkState later = propagate(chain(8, 0.0), w, 2.0);
  CHECK(later.time == 2.0);
  CHECK(later.norm2() < 1.0);
}

TEST_CASE("Hermitian and anti-Hermitian parts reassemble H") {
  const ComplexMatrix h = chain(6, 0.2);
  const ComplexMatrix back = hermitian_part(h) + Complex{0.0, 1.0} * anti_hermitian_part(h);
  CHECK((back - h).norm() < 1e-14);
  CHECK((anti_hermitian_part(h) - anti_hermitian_part(h).adjoint()).norm() < 1e-14);
}

TEST_CASE("Lyapunov solver") {
  const ComplexMatrix a = Complex{0.0, -1.0} * chain(6, 0.1);
  const ComplexMatrix c = ComplexMatrix::Random(6, 6);
  const ComplexMatrix x = solve_lyapunov(a, c);
  CHECK((a * x + x * a.adjoint() - c).norm() < 1e-12);
}

TEST_CASE("escape distribution matches the spectral integral and sums to one") {
  for (int n : {2, 4, 6}) {
    for (double h : {0.0, 0.3}) {
      const ComplexMatrix hm = chain(n, h);
      const WalkState w = make_w_state(n);
      const EscapeDistribution f = escape_distribution(hm, w);
      const Eigen::VectorXd ref = oracle::escape_spectral(hm, w.amplitudes);
      CHECK((f.values - ref).cwiseAbs().maxCoeff() < 1e-8);
      CHECK(f.sum() == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("escape from a later start sums to the surviving norm") {
  const ComplexMatrix hm = chain(6, 0.2);
  const WalkState w = make_w_state(6);
  EscapeOptions o;
  o.start_time = 2.0;
  const EscapeDistribution f = escape_distribution(hm, w, o);
  CHECK(f.sum() == doctest::Approx(propagate(hm, w, 2.0).norm2()).epsilon(1e-8));
}

TEST_CASE("tail-free mode demands a decayed state") {
  EscapeOptions o;
  o.t_max = 1.0;
  o.tail = TailMode::kNone;
  CHECK_THROWS_AS(escape_distribution(chain(4, 0.1), make_w_state(4), o), ConvergenceError);
}

TEST_CASE("current decomposition matches a central difference") {
  const ComplexMatrix hm = chain(6, 0.25);
  const WalkState w = propagate(hm, make_w_state(6), 1.0);
  const CurrentDecomposition c = current_decomposition(hm, w);
  const double dt = 1e-5;
  const Eigen::VectorXd plus = propagate(hm, w, dt).amplitudes.cwiseAbs2();
  const Eigen::VectorXd minus = propagate(hm, make_w_state(6), 1.0 - dt).amplitudes.cwiseAbs2();
  const Eigen::VectorXd numeric = (plus - minus) / (2.0 * dt);
  CHECK((numeric - c.density_rate).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((c.coherent + c.incoherent - c.density_rate).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(std::abs(c.coherent.sum()) < 1e-13);
}

TEST_CASE("density map rows follow the propagator") {
  const ComplexMatrix hm = chain(4, 0.1);
  const WalkState w = make_w_state(4);
  const std::vector<double> t{0.0, 0.5, 1.0, 2.5};
  const Eigen::MatrixXd d = density_map(hm, w, t);
  for (int i = 0; i < 4; ++i) {
    const Eigen::VectorXd ref = (oracle::taylor_propagator(hm, t[i]) * w.amplitudes).cwiseAbs2();
    CHECK((d.row(i).transpose() - ref).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(density_map(hm, w, std::vector<double>{1.0, 0.5}), DomainError);
}

}
