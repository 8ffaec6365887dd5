// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "altchain/edge_analysis.hpp"
#include "altchain/hamiltonians.hpp"

using namespace altchain;

namespace {
const DipoleOrientation kMagic = DipoleOrientation::magic();
constexpr double kD = kPi / 2;

ComplexVector power_law_state(int n, double exponent, bool from_right) {
  ComplexVector v(n);
  for (int x = 0; x < n; ++x) {
    const double r = from_right ? n - x : x + 1.0;
    v(x) = std::pow(r, exponent) * ((x % 2) ? Complex{0.0, 1.0} : Complex{1.0});
  }
  return v.normalized();
}
}  // namespace

TEST_SUITE("edge_analysis") {

TEST_CASE("profile weights and the heavier end") {
  const ComplexVector v = power_law_state(100, -2.0, true);
  const EdgeStateProfile p = make_profile(v, Complex{0.1, 0.0});
  CHECK(p.end == ChainEnd::kRight);
  CHECK(p.boundary_weight == doctest::Approx(p.right_weight));
  CHECK(p.right_weight > 0.9);
  CHECK(p.left_weight + p.right_weight <= 1.0 + 1e-12);
  CHECK(p.amplitudes.norm() == doctest::Approx(1.0));
}

TEST_CASE("participation ratio and localization length of simple states") {
  const EdgeStateProfile uniform = make_profile(ComplexVector::Constant(50, 1.0), 0.0);
  CHECK(participation_ratio(uniform) == doctest::Approx(50.0));
  CHECK(localization_length(uniform) == doctest::Approx(24.5));
  ComplexVector site = ComplexVector::Zero(50);
  site(0) = 1.0;
  const EdgeStateProfile point = make_profile(site, 0.0);
  CHECK(participation_ratio(point) == doctest::Approx(1.0));
  CHECK(localization_length(point) == doctest::Approx(0.0));
}

TEST_CASE("tail fit recovers algebraic decay and rejects exponential decay") {
  for (bool right : {false, true}) {
    const EdgeStateProfile p = make_profile(power_law_state(400, -1.5, right), 0.0);
    const PowerLawFit site = fit_tail(p, {0.1, 0.9, TailSampling::kSite, 0.9});
    CHECK(site.exponent == doctest::Approx(-1.5).epsilon(1e-10));
    const PowerLawFit cell = fit_tail(p);
    CHECK(cell.exponent == doctest::Approx(-1.5).epsilon(0.02));
  }
  ComplexVector e(400);
  for (int x = 0; x < 400; ++x) e(x) = std::exp(-0.05 * x);
  CHECK_THROWS_AS(fit_tail(make_profile(e, 0.0)), DomainError);
}

TEST_CASE("edge candidates sit on the pseudo-real axis") {
  ComplexVector w(4);
  w << Complex{1.0, -0.3}, Complex{0.5, 0.0}, Complex{-0.5, 0.0}, Complex{2.0, 0.4};
  const auto [a, b] = edge_candidates(w);
  CHECK(a == 2);
  CHECK(b == 1);
}

TEST_CASE("alternating chain hosts one localized edge state") {
  const int n = 200;
  const AlternationStrength alt = AlternationStrength::from_exponent(n, 0.25);
  const Spectrum s = eigendecompose(build_two_band({n, kD}, kMagic, alt));
  const EdgeSearch search = search_edge_state(s);
  CHECK(search.localized);
  CHECK(search.best.boundary_weight > 0.9);
  CHECK(search.partner.boundary_weight < 0.5);
  CHECK(2.0 * 0.5 - 2.0 * search.best.eigenvalue.imag() == doctest::Approx(1.0).epsilon(0.2));
  CHECK(find_edge_state(s).has_value());
}

TEST_CASE("deformation spreads the edge state") {
  // Below N ~ 100 the participation ratio saturates at the chain length.
  const int n = 200;
  const std::vector<double> grid{0.0, 0.25, 0.5, 0.75};
  DeformationSweepOptions options;
  options.max_step = 0.125;
  const DeformationSweep sweep =
      deformation_sweep({n, kD}, AlternationStrength::from_exponent(n, 0.25), kMagic, grid, options);
  CHECK(sweep.profiles.front().end == ChainEnd::kLeft);
  CHECK(sweep.connect_overlap >= 0.5);
  REQUIRE(sweep.participation_ratios.size() == 4);
  for (std::size_t i = 1; i < 4; ++i) CHECK(sweep.participation_ratios[i] > sweep.participation_ratios[i - 1]);
  for (double o : sweep.min_overlaps) CHECK(o >= 0.5);
  CHECK_THROWS_AS(deformation_sweep({n, kD}, AlternationStrength{0.2, std::nullopt}, kMagic, std::vector<double>{}), DomainError);
}

}
