// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

#include "altchain/edge_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "altchain/hamiltonians.hpp"

namespace altchain {
namespace {

double linear_r_squared(const std::vector<double>& x, const std::vector<double>& y) {
  const Eigen::Map<const Eigen::VectorXd> xv(x.data(), x.size()), yv(y.data(), y.size());
  const Eigen::VectorXd dx = xv.array() - xv.mean(), dy = yv.array() - yv.mean();
  const double sxy = dx.dot(dy), sxx = dx.squaredNorm(), syy = dy.squaredNorm();
  if (!(sxx > 0.0) || !(syy > 0.0)) return 1.0;
  return sxy * sxy / (sxx * syy);
}

}  // namespace

EdgeStateProfile make_profile(const ComplexVector& state, Complex eigenvalue, double boundary_fraction) {
  if (state.size() < 2) throw DomainError("make_profile: need at least two sites");
  if (!(state.norm() > 0.0)) throw DomainError("make_profile: zero state");
  EdgeStateProfile p;
  p.amplitudes = state.normalized();
  p.eigenvalue = eigenvalue;
  const Eigen::Index n = state.size();
  const Eigen::Index span = std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::floor(boundary_fraction * n)));
  const Eigen::VectorXd prob = p.amplitudes.cwiseAbs2();
  p.left_weight = prob.head(span).sum();
  p.right_weight = prob.tail(span).sum();
  p.end = p.right_weight > p.left_weight ? ChainEnd::kRight : ChainEnd::kLeft;
  p.boundary_weight = std::max(p.left_weight, p.right_weight);
  return p;
}

std::pair<Eigen::Index, Eigen::Index> edge_candidates(const ComplexVector& eigenvalues) {
  const Eigen::Index n = eigenvalues.size();
  if (n < 2) throw DomainError("edge_candidates: need at least two eigenvalues");
  const double axis = eigenvalues.sum().imag() / static_cast<double>(n);
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Distances below 1e-9 count as ties so that rounding noise does not decide.
  auto key = [&](Eigen::Index i) { return std::round(std::abs(eigenvalues(i).imag() - axis) * 1e9); };
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (key(a) != key(b)) return key(a) < key(b);
    return eigenvalues(a).real() < eigenvalues(b).real();
  });
  return {order[0], order[1]};
}

EdgeSearch search_edge_state(const Spectrum& spectrum, EdgeSearchOptions options) {
  if (!spectrum.has_vectors()) throw DomainError("search_edge_state: spectrum has no eigenvectors");
  const auto [a, b] = edge_candidates(spectrum.eigenvalues);
  EdgeStateProfile pa = make_profile(spectrum.right_vectors.col(a), spectrum.eigenvalues(a), options.boundary_fraction);
  EdgeStateProfile pb = make_profile(spectrum.right_vectors.col(b), spectrum.eigenvalues(b), options.boundary_fraction);
  pa.index = a;
  pb.index = b;
  if (pb.boundary_weight > pa.boundary_weight) std::swap(pa, pb);

  EdgeSearch out;
  out.localized = pa.boundary_weight > options.localization_threshold;
  if (out.localized && pb.boundary_weight > options.localization_threshold &&
      pa.boundary_weight - pb.boundary_weight < options.ambiguity) {
    throw AmbiguityError("search_edge_state: both candidates localized with equal weight (states " +
                         std::to_string(pa.index) + ": " + std::to_string(pa.boundary_weight) + ", " +
                         std::to_string(pb.index) + ": " + std::to_string(pb.boundary_weight) + ")");
  }
  out.best = std::move(pa);
  out.partner = std::move(pb);
  return out;
}

std::optional<EdgeStateProfile> find_edge_state(const Spectrum& spectrum, EdgeSearchOptions options) {
  EdgeSearch s = search_edge_state(spectrum, options);
  if (!s.localized) return std::nullopt;
  return std::move(s.best);
}

PowerLawFit fit_tail(const EdgeStateProfile& profile, TailWindow window) {
  const Eigen::Index n = profile.size();
  if (!(window.begin_fraction >= 0.0 && window.end_fraction <= 1.0 && window.begin_fraction < window.end_fraction)) {
    throw DomainError("fit_tail: invalid window");
  }
  const double lo = window.begin_fraction * n, hi = window.end_fraction * n;
  const bool from_right = profile.end == ChainEnd::kRight;
  // Distance of 0-based site position x from the localized end, 1 on the boundary site.
  auto distance = [&](double x) { return from_right ? static_cast<double>(n) - x : x + 1.0; };

  std::vector<double> dist, amp;
  if (window.sampling == TailSampling::kSite) {
    for (Eigen::Index x = 0; x < n; ++x) {
      const double r = distance(static_cast<double>(x));
      if (r >= lo && r <= hi) {
        dist.push_back(r);
        amp.push_back(std::abs(profile.amplitudes(x)));
      }
    }
  } else {
    if (n % 2 != 0) throw DomainError("fit_tail: cell envelope needs an even number of sites");
    for (Eigen::Index c = 0; c < n / 2; ++c) {
      const double r = distance(2.0 * c + 0.5);
      if (r >= lo && r <= hi) {
        dist.push_back(r);
        amp.push_back(std::hypot(std::abs(profile.amplitudes(2 * c)), std::abs(profile.amplitudes(2 * c + 1))));
      }
    }
  }
  if (dist.size() < 4) throw DomainError("fit_tail: window holds fewer than four samples");

  const PowerLawFit fit = fit_power_law(dist, amp);
  std::vector<double> log_amp(amp.size());
  std::transform(amp.begin(), amp.end(), log_amp.begin(), [](double a) { return std::log(a); });
  const double exponential_r2 = linear_r_squared(dist, log_amp);
  if (fit.r_squared < window.min_r_squared || exponential_r2 > fit.r_squared) {
    throw DomainError("fit_tail: tail not algebraic on this window (log-log r^2 = " + std::to_string(fit.r_squared) +
                      ", semi-log r^2 = " + std::to_string(exponential_r2) + ")");
  }
  return fit;
}

double participation_ratio(const EdgeStateProfile& profile) {
  const double norm2 = profile.amplitudes.squaredNorm();
  return norm2 * norm2 / profile.amplitudes.cwiseAbs2().cwiseAbs2().sum();
}

double localization_length(const EdgeStateProfile& profile) {
  const Eigen::Index n = profile.size();
  const Eigen::VectorXd prob = profile.amplitudes.cwiseAbs2() / profile.amplitudes.squaredNorm();
  double mean = 0.0;
  for (Eigen::Index x = 0; x < n; ++x) {
    const double d = profile.end == ChainEnd::kLeft ? static_cast<double>(x) : static_cast<double>(n - 1 - x);
    mean += d * prob(x);
  }
  return mean;
}

namespace {

struct Tracked {
  ComplexVector vector;
  Complex value;
  double worst_overlap = 1.0;
};

// Follows `state` along family(t), t from `from` to `to`, by maximal
// eigenvector overlap. Steps start at `step` and halve (down to step/64)
// whenever the best overlap falls below min_overlap.
Tracked follow(const std::function<ComplexMatrix(double)>& family, Tracked state, double from, double to, double step,
               double min_overlap, const char* parameter) {
  const double floor = step / 64.0;
  double t = from;
  double h = step;
  while (t < to - 1e-15) {
    const double next = std::min(to, t + h);
    const Spectrum spec = eigendecompose(family(next));
    const Eigen::VectorXd overlaps = (spec.right_vectors.adjoint() * state.vector).cwiseAbs();
    Eigen::Index best = 0;
    const double overlap = overlaps.maxCoeff(&best);
    if (overlap < min_overlap) {
      if (h * 0.5 < floor) {
        throw ConvergenceError(std::string("deformation_sweep: band tracking lost at ") + parameter + " = " +
                               std::to_string(next) + " (overlap " + std::to_string(overlap) + "); refine grid");
      }
      h *= 0.5;
      continue;
    }
    state.worst_overlap = std::min(state.worst_overlap, overlap);
    state.vector = spec.right_vectors.col(best);
    state.value = spec.eigenvalues(best);
    t = next;
  }
  return state;
}

}  // namespace

DeformationSweep deformation_sweep(const ChainGeometry& geometry, const AlternationStrength& alternation,
                                   const DipoleOrientation& orientation, std::span<const double> lambda_grid,
                                   DeformationSweepOptions options) {
  if (lambda_grid.empty()) throw DomainError("deformation_sweep: empty lambda grid");
  if (!std::is_sorted(lambda_grid.begin(), lambda_grid.end())) throw DomainError("deformation_sweep: lambda grid must ascend");
  if (!(options.max_step > 0.0) || !(options.connect_step > 0.0)) {
    throw DomainError("deformation_sweep: continuation steps must be positive");
  }
  for (const double l : lambda_grid) {
    if (l < 0.0 || l > 1.0) throw DomainError("deformation_sweep: lambda outside [0, 1]");
  }

  // The stripped chain carries a mirror pair of edge candidates (sigma_z R
  // maps H' to -H'); the one meant is the continuation of the edge state of
  // the full chain as the sublattice-diagonal hopping is switched off.
  const ComplexMatrix full = build_two_band(geometry, orientation, alternation);
  const ComplexMatrix stripped = strip_sublattice_common(full);
  const auto edge = find_edge_state(eigendecompose(full), options.search);
  if (!edge) throw DomainError("deformation_sweep: no edge state on the unstripped chain");
  const auto connect = [&](double mu) -> ComplexMatrix { return (1.0 - mu) * full + mu * stripped; };
  Tracked state{edge->amplitudes, edge->eigenvalue};
  state = follow(connect, state, 0.0, 1.0, options.connect_step, options.min_overlap, "mu");

  const auto deform = [&](double lambda) {
    return build_deformed_real_space(geometry, lambda, alternation, orientation);
  };
  DeformationSweep out;
  out.connect_overlap = state.worst_overlap;
  double lambda = 0.0;
  for (const double target : lambda_grid) {
    state.worst_overlap = 1.0;
    state = follow(deform, state, lambda, target, options.max_step, options.min_overlap, "lambda");
    lambda = target;
    EdgeStateProfile p = make_profile(state.vector, state.value, options.search.boundary_fraction);
    out.lambda_grid.push_back(target);
    out.participation_ratios.push_back(participation_ratio(p));
    out.min_overlaps.push_back(state.worst_overlap);
    out.profiles.push_back(std::move(p));
  }
  return out;
}

}  // namespace altchain
