// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria (0 when all pass).
//
//   altchain_acceptance            all criteria
//   altchain_acceptance 3 5        selected criteria

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "altchain/dispersion.hpp"
#include "altchain/edge_analysis.hpp"
#include "altchain/hamiltonians.hpp"
#include "altchain/spectral.hpp"
#include "altchain/topology.hpp"
#include "altchain/walks.hpp"
#include "oracles.hpp"

using namespace altchain;

namespace {

// Tolerances, pinned.
constexpr double kRectangleTol = 1e-6;          // 1: Im G~ vs the Poisson oracle
constexpr int kCensusDefective = 49;            // 2
constexpr int kCensusDiagonalizable = 1;        // 2
constexpr double kLowEp = 0.050, kLowEpTol = 0.01;    // 2
constexpr double kHighEp = 0.50, kHighEpTol = 0.02;   // 2
constexpr double kSqrtExponent = 0.50, kSqrtTol = 0.05;  // 3
constexpr double kUniformExponent = -3.0, kAlternatingExponent = -2.0, kSubradianceTol = 0.3;  // 4
constexpr double kSmallChainDecade = 10.0;      // 4: within one order of magnitude of gamma0
constexpr double kEdgeEpExponent = -0.65, kEdgeEpExponentTol = 0.1;  // 5
constexpr double kEdgeEp100 = 0.05, kEdgeEp100Tol = 0.01;            // 5
constexpr double kBoundaryWeightMin = 0.5;      // 6
constexpr double kTailR2Min = 0.95;             // 6
constexpr double kEdgeDecayRelTol = 0.2;        // 6
constexpr double kExtensiveExponentMin = 0.9;   // 6: "superlinearly to linearly"
constexpr double kLocalizedSpreadMax = 0.2;     // 6: max/min - 1
constexpr double kNormalizationTol = 1e-6;      // 8
constexpr double kBoundaryFraction = 0.05;      // 9
constexpr double kInnerFraction = 0.8;          // 9
constexpr double kParityFactor = 10.0;          // 9
constexpr double kWindingTol = 1e-4;            // 10
constexpr double kOracleTol = 1e-8;             // 11

const DipoleOrientation kMagic = DipoleOrientation::magic();
constexpr double kD = kPi / 2;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

ComplexMatrix chain(int n, double h, bool onsite = false) {
  return build_two_band({n, kD}, kMagic, {h, std::nullopt}, {onsite});
}

Outcome rectangle_dispersion() {
  double worst = 0.0;
  int inside = 0, outside = 0;
  bool signs = true;
  for (int j = 0; j < 40; ++j) {
    // 20 samples in |k| < 1 and 20 in 1 < |k| < 2 (kd in (-pi, pi)).
    const double k = j < 20 ? -1.0 + 2.0 * (j + 0.5) / 20.0
                            : (j < 30 ? -2.0 + (j - 20 + 0.5) / 10.0 : 1.0 + (j - 30 + 0.5) / 10.0);
    const double im = discrete_ft(k, kD, kMagic, 1e-10).value.imag();
    const double ref = oracle::poisson_imag_magic(k, kD);
    worst = std::max(worst, std::abs(im - ref));
    const bool in_cone = std::abs(k) < 1.0;
    (in_cone ? inside : outside)++;
    signs = signs && std::abs(im - (in_cone ? 0.5 : -0.5)) < kRectangleTol;
  }
  double worst_2d = 0.0;
  for (int j = 0; j < 41; ++j) {
    const double k = -1.0 + 2.0 * (j + 0.5) / 41.0;
    worst_2d = std::max(worst_2d, std::abs(discrete_ft(k, 2.0 * kD, kMagic, 1e-10).value.imag()));
  }
  return {signs && worst < kRectangleTol && worst_2d < kRectangleTol,
          fmt("%d inside / %d outside, max |Im G_d - Poisson| = %.2e, max |Im G_2d| = %.2e", inside, outside, worst,
              worst_2d)};
}

Outcome ep_transition() {
  const BlochCensus census = bloch_census(100, kEpAlternation, kD, kMagic);
  std::vector<double> grid;
  for (int i = 0; i <= 200; ++i) grid.push_back(0.005 * i);
  const EpReport r = scan_eps([](double h) { return chain(100, h); }, grid);
  const EpCandidate* low = nullptr;
  const EpCandidate* high = nullptr;
  for (const auto& m : r.minima) {
    // Report the refined local minimum nearest each target.
    if (std::abs(m.h - kLowEp) <= kLowEpTol && (!low || std::abs(m.h - kLowEp) < std::abs(low->h - kLowEp))) low = &m;
    if (std::abs(m.h - kHighEp) <= kHighEpTol && (!high || std::abs(m.h - kHighEp) < std::abs(high->h - kHighEp))) {
      high = &m;
    }
  }
  const bool pass = census.defective_count == kCensusDefective &&
                    census.diagonalizable_count == kCensusDiagonalizable && low && high;
  return {pass, fmt("census %d defective / %d diagonalizable; minimum near 0.05: %s; near 0.5: %s",
                    census.defective_count, census.diagonalizable_count,
                    low ? fmt("h=%.4f (angle %.2e)", low->h, low->angle).c_str() : "none",
                    high ? fmt("h=%.4f (angle %.2e)", high->h, high->angle).c_str() : "none")};
}

Outcome sqrt_coalescence() {
  const double k = 0.5 / kD;
  std::vector<double> delta, split;
  for (int side : {-1, 1}) {
    for (int i = 0; i <= 8; ++i) {
      const double dh = std::pow(10.0, -4.0 + 2.0 * i / 8.0);
      const TwoBandDispersion b = two_band_dispersion(k, kEpAlternation + side * dh, kD, kMagic, 1e-13);
      delta.push_back(dh);
      split.push_back(std::abs(b.omega_plus - b.omega_minus));
    }
  }
  const PowerLawFit fit = fit_power_law(delta, split);
  return {std::abs(fit.exponent - kSqrtExponent) <= kSqrtTol,
          fmt("exponent %.4f (r^2 %.6f) over |h-0.5| in [1e-4, 1e-2], both sides", fit.exponent, fit.r_squared)};
}

Outcome subradiance() {
  auto fit_for = [](const std::vector<int>& sizes, auto h_of) {
    std::vector<double> n, rate;
    for (int s : sizes) {
      n.push_back(s);
      rate.push_back(min_decay_rate(chain(s, h_of(s))));
    }
    return fit_power_law(n, rate);
  };
  const PowerLawFit uniform = fit_for({100, 150, 200, 300, 400}, [](int) { return 0.0; });
  const PowerLawFit alternating = fit_for({60, 100, 200, 400}, [](int n) { return 20.0 / n; });
  double lo = INFINITY, hi = 0.0;
  for (int n = 10; n < 40; n += 2) {
    const double r = min_decay_rate(chain(n, 20.0 / n));
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  const bool small_ok = lo >= 1.0 / kSmallChainDecade && hi <= kSmallChainDecade;
  const bool pass = std::abs(uniform.exponent - kUniformExponent) <= kSubradianceTol &&
                    std::abs(alternating.exponent - kAlternatingExponent) <= kSubradianceTol && small_ok;
  return {pass, fmt("h=0 exponent %.3f; h=20/N exponent %.3f; N<40 min rate in [%.3f, %.3f]", uniform.exponent,
                    alternating.exponent, lo, hi)};
}

Outcome edge_ep_scaling() {
  const std::vector<int> sizes{50, 100, 200, 400};
  const EdgeEpScaling s = h_edge_ep_scaling(sizes, kD, kMagic);
  const double h100 = s.h_edge_ep[1];
  const bool pass = std::abs(s.fit.exponent - kEdgeEpExponent) <= kEdgeEpExponentTol &&
                    std::abs(h100 - kEdgeEp100) <= kEdgeEp100Tol;
  return {pass, fmt("h_EP = %.4f, %.4f, %.4f, %.4f; exponent %.3f; h_EP(100) = %.4f", s.h_edge_ep[0], s.h_edge_ep[1],
                    s.h_edge_ep[2], s.h_edge_ep[3], s.fit.exponent, h100)};
}

EdgeStateProfile edge_profile(int n, double alpha) {
  const Spectrum s = eigendecompose(chain(n, std::pow(static_cast<double>(n), -alpha)));
  return search_edge_state(s).best;
}

Outcome edge_state() {
  const EdgeStateProfile p = edge_profile(500, 0.25);
  double r2 = 0.0;
  std::string tail;
  try {
    const PowerLawFit fit = fit_tail(p);
    r2 = fit.r_squared;
    tail = fmt("tail exponent %.3f r^2 %.4f", fit.exponent, r2);
  } catch (const DomainError& e) {
    tail = e.what();
  }
  const double decay = 2.0 * 0.5 - 2.0 * p.eigenvalue.imag();
  const bool part_a = p.boundary_weight > kBoundaryWeightMin && r2 >= kTailR2Min &&
                      std::abs(decay - 1.0) <= kEdgeDecayRelTol;

  const std::vector<int> sizes{200, 350, 500};
  std::vector<double> ns, extended, localized;
  for (int n : sizes) {
    ns.push_back(n);
    extended.push_back(localization_length(edge_profile(n, 0.9)));
    localized.push_back(n == 500 ? localization_length(p) : localization_length(edge_profile(n, 0.25)));
  }
  const PowerLawFit growth = fit_power_law(ns, extended);
  const auto [mn, mx] = std::minmax_element(localized.begin(), localized.end());
  const double spread = *mx / *mn - 1.0;
  const bool part_b = growth.exponent >= kExtensiveExponentMin && spread < kLocalizedSpreadMax;
  return {part_a && part_b,
          fmt("N=500: weight %.4f, %s, decay %.4f | N^-0.9 length %.1f/%.1f/%.1f exponent %.3f | N^-0.25 length "
              "%.3f/%.3f/%.3f spread %.1f%%",
              p.boundary_weight, tail.c_str(), decay, extended[0], extended[1], extended[2], growth.exponent,
              localized[0], localized[1], localized[2], 100.0 * spread)};
}

Outcome deformation() {
  const int n = 500;
  const std::vector<double> grid{0.0, 0.25, 0.5, 0.75};
  const DeformationSweep s = deformation_sweep({n, kD}, AlternationStrength::from_exponent(n, 0.25), kMagic, grid);
  bool increasing = true;
  for (std::size_t i = 1; i < s.participation_ratios.size(); ++i) {
    increasing = increasing && s.participation_ratios[i] > s.participation_ratios[i - 1];
  }
  const auto& pr = s.participation_ratios;
  return {increasing, fmt("PR = %.3f, %.3f, %.3f, %.3f at h = %.4f", pr[0], pr[1], pr[2], pr[3], std::pow(500.0, -0.25))};
}

struct WalkRun {
  double h = 0;
  EscapeDistribution from_zero;
  EscapeDistribution from_five;
};

const std::vector<WalkRun>& walks() {
  static const std::vector<WalkRun> runs = [] {
    const int n = 200;
    std::vector<WalkRun> out;
    for (double alpha : {-1.0, 0.75, 0.5, 0.25}) {
      WalkRun r;
      r.h = alpha < 0 ? 0.0 : std::pow(static_cast<double>(n), -alpha);
      const ComplexMatrix h = chain(n, r.h, true);
      const WalkState w = make_w_state(n);
      r.from_zero = escape_distribution(h, w, {0.0, 1000.0, 0.01});
      r.from_five = escape_distribution(h, w, {5.0, 1000.0, 0.01});
      out.push_back(std::move(r));
    }
    return out;
  }();
  return runs;
}

Outcome escape_normalization() {
  double worst = 0.0;
  std::ostringstream sums;
  for (const auto& r : walks()) {
    worst = std::max(worst, std::abs(r.from_zero.sum() - 1.0));
    sums << fmt("%.10f ", r.from_zero.sum());
  }
  return {worst <= kNormalizationTol, "sum F(x,0) = " + sums.str() + fmt("(max deviation %.2e)", worst)};
}

double reflection_difference(const Eigen::VectorXd& f) { return (f - f.reverse()).norm(); }

Outcome walk_phenomenology() {
  const Eigen::VectorXd& f0 = walks().front().from_five.values;
  const Eigen::VectorXd& f1 = walks().back().from_five.values;
  const int n = static_cast<int>(f0.size());
  const int edge = static_cast<int>(std::ceil(kBoundaryFraction * n));

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::partial_sort(order.begin(), order.begin() + 2, order.end(), [&](int a, int b) { return f0(a) > f0(b); });
  const int a = std::min(order[0], order[1]), b = std::max(order[0], order[1]);
  const bool ends = a < edge && b >= n - edge;

  Eigen::Index peak;
  f1.maxCoeff(&peak);
  const int margin = static_cast<int>(std::round((1.0 - kInnerFraction) / 2.0 * n));
  const bool bulk = peak >= margin && peak < n - margin;
  const double asym0 = reflection_difference(f0), asym1 = reflection_difference(f1);
  const bool parity = asym1 > kParityFactor * asym0;
  return {ends && bulk && parity,
          fmt("h=0 top two at sites %d, %d (%s); h=N^-0.25 max at site %d (%s inner 80%%); reflection diff %.2e vs "
              "%.2e (%s)",
              a, b, ends ? "outer 5%" : "not both ends", static_cast<int>(peak), bulk ? "in" : "outside", asym1, asym0,
              parity ? "asymmetric" : "symmetric")};
}

Outcome winding() {
  const WindingResult s = winding_number(short_range_q_samples(1.0, 0.3, 1.0, 512));
  const WindingResult l = winding_number(long_range_q_samples(0.3, kD, kMagic, 512));
  const bool pass = s.defined && std::abs(s.value - 1.0) < kWindingTol && s.residual < kWindingTol && !l.defined;
  return {pass, fmt("short-range value %.6f (defined %d, residual %.1e); long-range defined %d", s.value, s.defined,
                    s.residual, l.defined)};
}

Outcome oracle_equivalence() {
  double worst_h = 0.0, worst_spec = 0.0, worst_u = 0.0, worst_f = 0.0;
  for (int n = 2; n <= 6; ++n) {
    for (double theta : {0.3, kMagic.theta}) {
      const ComplexMatrix r = build_rddi({n, kD}, {theta}, {true});
      worst_h = std::max(worst_h, (r - oracle::two_band(n, kD, theta, 0.0, true)).cwiseAbs().maxCoeff());
    }
    if (n % 2 != 0) continue;
    for (double h : {0.0, 0.3, 0.5, 0.8}) {
      const ComplexMatrix hm = chain(n, h, true);
      worst_h = std::max(worst_h, (hm - oracle::two_band(n, kD, kMagic.theta, h, true)).cwiseAbs().maxCoeff());
      const ComplexVector w = eigenvalues(hm);
      const auto roots = oracle::polynomial_roots(oracle::characteristic_polynomial(hm));
      const std::vector<Complex> ws(w.data(), w.data() + w.size());
      worst_spec = std::max({worst_spec, oracle::set_distance(ws, roots), oracle::set_distance(roots, ws)});
      for (double t : {0.5, 3.0, 10.0}) {
        worst_u = std::max(worst_u, (propagator(hm, t) - oracle::taylor_propagator(hm, t)).cwiseAbs().maxCoeff());
      }
      const WalkState psi = make_w_state(n);
      const Eigen::VectorXd f = escape_distribution(hm, psi).values;
      worst_f = std::max(worst_f, (f - oracle::escape_spectral(hm, psi.amplitudes)).cwiseAbs().maxCoeff());
    }
  }
  const double worst = std::max({worst_h, worst_spec, worst_u, worst_f});
  return {worst <= kOracleTol,
          fmt("max deviation: H %.1e, spectra %.1e, propagators %.1e, F(x,0) %.1e", worst_h, worst_spec, worst_u, worst_f)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "rectangle dispersion", rectangle_dispersion},
      {2, "EP phase transition", ep_transition},
      {3, "square-root coalescence", sqrt_coalescence},
      {4, "sub-radiance scalings", subradiance},
      {5, "finite-size EP scaling", edge_ep_scaling},
      {6, "edge state", edge_state},
      {7, "deformation", deformation},
      {8, "escape normalization", escape_normalization},
      {9, "quantum-walk phenomenology", walk_phenomenology},
      {10, "winding", winding},
      {11, "oracle equivalence", oracle_equivalence},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.contains(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += o.pass ? 0 : 1;
    std::printf("%s %2d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures;
}
