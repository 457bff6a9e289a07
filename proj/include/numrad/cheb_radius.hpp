// Copyright the numrad authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>
#include "numrad/chebyshev.hpp"
#include "numrad/result.hpp"
#include "numrad/spectral.hpp"

// r(A) as the maximum of a global Chebyshev interpolant of h on [0, 2 pi].
// The interpolant is non-periodic. Where h has a kink the coefficients stall;
// such a piece is split at the located kink and each side is interpolated
// separately.

namespace numrad
{

struct ChebRadiusOptions
{
  ChebOptions interp;
  int max_depth = 10;
};

namespace detail
{

// Locate the sharpest feature of f in (a, b) by repeatedly zooming in on the
// largest second difference of a uniform sample.
template <class F>
double locate_kink(F &&f, double a, double b, long &evals)
{
  constexpr int points = 129;
  double lo = a;
  double hi = b;
  std::vector<double> v(points);
  for (int iter = 0; iter < 12; ++iter)
  {
    const double step = (hi - lo) / (points - 1);
    parallel_for(0, points, [&](std::ptrdiff_t j)
                 { v[static_cast<std::size_t>(j)] = f(lo + step * static_cast<double>(j)); });
    evals += points;
    int best = 1;
    double best_jump = -1.0;
    for (int j = 1; j + 1 < points; ++j)
    {
      const double jump = std::abs(v[static_cast<std::size_t>(j - 1)] -
                                   2.0 * v[static_cast<std::size_t>(j)] +
                                   v[static_cast<std::size_t>(j + 1)]);
      if (jump > best_jump)
      {
        best_jump = jump;
        best = j;
      }
    }
    const double new_lo = lo + step * (best - 1);
    const double new_hi = lo + step * (best + 1);
    lo = new_lo;
    hi = new_hi;
    if (hi - lo <= 1e-14 * (b - a))
    {
      break;
    }
  }
  // Keep both pieces non-degenerate.
  const double margin = 1e-12 * (b - a);
  return std::clamp(0.5 * (lo + hi), a + margin, b - margin);
}

}  // namespace detail

/// Pieces making up the global interpolant, in increasing theta.
struct ChebRadiusReport
{
  RadiusResult result;
  std::vector<ChebSeries> pieces;
};

inline ChebRadiusReport compute_radius_cheb_report(const Matrix &a,
                                                   const ChebRadiusOptions &opts = {})
{
  detail::Stopwatch clock;
  ChebRadiusReport report;
  RadiusResult &res = report.result;
  res.method = Method::CHEB;

  auto h = [&a](double theta) { return eval_h_value(a, theta); };

  struct Piece
  {
    double lo;
    double hi;
    int depth;
  };
  std::vector<Piece> stack{{0.0, two_pi, 0}};
  double best_value = -std::numeric_limits<double>::infinity();
  double best_theta = 0.0;
  while (!stack.empty())
  {
    const Piece piece = stack.back();
    stack.pop_back();
    detail::AdaptiveFit fit = detail::adaptive_fit(h, piece.lo, piece.hi, opts.interp);
    res.h_evals += fit.evals;
    res.iterations += fit.refinements;
    if (!fit.converged)
    {
      if (piece.depth >= opts.max_depth)
      {
        throw InterpolationError("Chebyshev splitting exceeded depth " +
                                     std::to_string(opts.max_depth),
                                 std::move(fit.last_coeffs));
      }
      const double cut = detail::locate_kink(h, piece.lo, piece.hi, res.h_evals);
      // Right piece pushed first so pieces come off the stack left to right.
      stack.push_back({cut, piece.hi, piece.depth + 1});
      stack.push_back({piece.lo, cut, piece.depth + 1});
      continue;
    }
    const ChebMax m = cheb_max(fit.series);
    res.degenerate = res.degenerate || m.fallback;
    const double tie = 4.0 * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, std::abs(m.value)) * 8.0;
    if (m.value > best_value + tie || (std::abs(m.value - best_value) <= tie && m.theta < best_theta))
    {
      best_value = m.value;
      best_theta = m.theta;
    }
    report.pieces.push_back(std::move(fit.series));
  }

  res.value = std::max(best_value, 0.0);
  res.theta_star = wrap_angle(best_theta);
  res.wall_seconds = clock.seconds();
  return report;
}

inline RadiusResult compute_radius_cheb(const Matrix &a, const ChebRadiusOptions &opts = {})
{
  return compute_radius_cheb_report(a, opts).result;
}

inline RadiusResult compute_radius_cheb(const Matrix &a, double tol)
{
  ChebRadiusOptions opts;
  opts.interp.tol = tol;
  return compute_radius_cheb(a, opts);
}

}  // namespace numrad
