// Copyright the numrad authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>
#include "numrad/detail/lapack.hpp"
#include "numrad/oracle_grid.hpp"
#include "numrad/result.hpp"
#include "numrad/spectral.hpp"

// Level-set method with local optimization for r(A) = max_theta h(theta).
//
// Local maxima of h are found by a safeguarded Newton iteration. A candidate
// level gamma is then certified by computing every theta with h(theta) = gamma:
// with z = e^{i theta},
//
//   gamma in eig(H(theta))  <=>  det(z^2 A - 2 gamma z I + A^*) = 0,
//
// so the crossings are the unit-circle eigenvalues of a quadratic pencil,
// linearized here as z diag(A, I) - [[2 gamma I, -A^*], [I, 0]]. If some arc
// lies above the level, the optimizer restarts from its midpoint and the
// level rises; an empty crossing set certifies the level.
//
// Stopping constants of the outer loop are this library's own choice.

namespace numrad
{

/// All theta in [0, 2 pi) where h(theta) = gamma.
struct LevelCrossings
{
  double gamma = 0.0;
  std::vector<double> angles;  // strictly increasing
  // h >= gamma everywhere with no transversal crossing, or a singular pencil.
  bool whole_circle = false;
  // The pencil was singular (0/0 eigenvalues) or h is constant at gamma.
  bool degenerate = false;
  int indeterminate = 0;
  long h_evals = 0;
};

struct LevelSetOptions
{
  double unit_circle_tol = 1e-8;
  double residual_tol = 1e-8;  // |h(arg z) - gamma| <= residual_tol (1 + |gamma|)
  double dedup_tol = 1e-10;
};

namespace detail
{

inline double circular_distance(double x, double y)
{
  const double d = std::abs(x - y);
  return std::min(d, two_pi - d);
}

}  // namespace detail

inline LevelCrossings level_crossings(const Matrix &a, double gamma,
                                      const LevelSetOptions &opts = {})
{
  const Index n = a.n();
  LevelCrossings out;
  out.gamma = gamma;

  DenseMatrix lhs = DenseMatrix::Zero(2 * n, 2 * n);
  DenseMatrix rhs = DenseMatrix::Zero(2 * n, 2 * n);
  lhs.topLeftCorner(n, n).diagonal().setConstant(2.0 * gamma);
  lhs.topRightCorner(n, n) = -a.entries().adjoint();
  lhs.bottomLeftCorner(n, n).setIdentity();
  rhs.topLeftCorner(n, n) = a.entries();
  rhs.bottomRightCorner(n, n).setIdentity();
  const double lhs_norm = lhs.norm();
  const double rhs_norm = rhs.norm();

  detail::PencilEigenvalues ev;
  try
  {
    ev = detail::generalized_eigenvalues(lhs, rhs);
  }
  catch (const Error &e)
  {
    throw EigensolverError(e.what(), gamma, n);
  }

  const double eps = std::numeric_limits<double>::epsilon();
  const double zero_alpha = 1e3 * eps * lhs_norm;
  const double zero_beta = 1e3 * eps * rhs_norm;
  std::vector<double> candidates;
  for (Index k = 0; k < 2 * n; ++k)
  {
    const Complex alpha = ev.alpha(k);
    const Complex beta = ev.beta(k);
    if (std::abs(alpha) <= zero_alpha && std::abs(beta) <= zero_beta)
    {
      ++out.indeterminate;
      continue;
    }
    if (std::abs(beta) <= zero_beta)
    {
      continue;  // infinite
    }
    const Complex z = alpha / beta;
    if (std::abs(std::abs(z) - 1.0) <= opts.unit_circle_tol)
    {
      candidates.push_back(wrap_angle(std::arg(z)));
    }
  }

  // Confirm by direct evaluation; the pencil eigenvalues are less accurate
  // than h itself.
  std::vector<double> confirmed;
  for (double theta : candidates)
  {
    ++out.h_evals;
    if (std::abs(eval_h_value(a, theta) - gamma) <= opts.residual_tol * (1.0 + std::abs(gamma)))
    {
      confirmed.push_back(theta);
    }
  }
  std::sort(confirmed.begin(), confirmed.end());
  std::vector<double> unique;
  for (double theta : confirmed)
  {
    if (unique.empty() || theta - unique.back() > opts.dedup_tol)
    {
      unique.push_back(theta);
    }
  }
  if (unique.size() > 1 && two_pi - unique.back() + unique.front() <= opts.dedup_tol)
  {
    unique.pop_back();
  }

  // Keep transversal crossings only: h - gamma must change sign across the
  // angle. Tangential touches from below carry no arc above the level.
  for (std::size_t i = 0; i < unique.size(); ++i)
  {
    double eta = 1e-7;
    if (unique.size() > 1)
    {
      const double prev = unique[(i + unique.size() - 1) % unique.size()];
      const double next = unique[(i + 1) % unique.size()];
      eta = std::min({eta, 0.5 * detail::circular_distance(unique[i], prev),
                      0.5 * detail::circular_distance(unique[i], next)});
    }
    const double below = eval_h_value(a, unique[i] - eta) - gamma;
    const double above = eval_h_value(a, unique[i] + eta) - gamma;
    out.h_evals += 2;
    if ((below > 0.0) != (above > 0.0))
    {
      out.angles.push_back(unique[i]);
    }
  }

  if (out.indeterminate > 0 || static_cast<Index>(out.angles.size()) > 2 * n)
  {
    out.degenerate = true;
    out.whole_circle = true;
    out.angles.clear();
    return out;
  }

  if (out.angles.empty())
  {
    // Either entirely above, entirely below, or identically equal to gamma.
    const double h0 = eval_h_value(a, 0.0);
    ++out.h_evals;
    const double flat_tol = 1e-12 * (1.0 + std::abs(gamma));
    if (std::abs(h0 - gamma) <= flat_tol)
    {
      bool flat = true;
      for (int k = 1; k < 8 && flat; ++k)
      {
        flat = std::abs(eval_h_value(a, two_pi * k / 8.0) - gamma) <= flat_tol;
        ++out.h_evals;
      }
      if (flat)
      {
        out.degenerate = true;
        out.whole_circle = true;
      }
    }
    else if (h0 > gamma)
    {
      out.whole_circle = true;
    }
  }
  return out;
}

/// Result of a local ascent on h.
struct LocalMax
{
  double theta = 0.0;  // in [0, 2 pi)
  double value = 0.0;
  long evals = 0;
  int iterations = 0;
  bool converged = false;  // |h'| <= tol (1 + |h|) or bracket resolved
  bool hit_cap = false;
};

namespace detail
{

// Near a maximizer h changes by less than the eigensolver's rounding error
// (about n eps |h|), so a point that is lower by at most that much but has a
// smaller |h'| also counts as progress.
inline bool improves(const HDerivatives &next, const HDerivatives &cur, Index n)
{
  const double slack = 4.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() *
                       (1.0 + std::abs(cur.value));
  return next.value > cur.value ||
         (next.value >= cur.value - slack && std::abs(next.first) < std::abs(cur.first));
}

// Safeguarded Newton on h' inside the bracket (lo, hi), where h'(lo) has sign
// `dir` and h'(hi) the opposite sign: a Newton step from the endpoint with the
// smaller |h'| is taken when it lands inside the bracket and the previous
// Newton step at least halved |h'|, otherwise the midpoint. Near-multiple
// lambda_max forces the midpoint. Returns the best point evaluated.
inline HDerivatives bisect_derivative(const Matrix &a, HDerivatives lo, HDerivatives hi,
                                      double dir, double tol, long &evals)
{
  HDerivatives best = improves(hi, lo, a.n()) ? hi : lo;
  bool allow_newton = true;
  for (int k = 0; k < 100; ++k)
  {
    const double left = std::min(lo.theta, hi.theta);
    const double right = std::max(lo.theta, hi.theta);
    double trial = 0.5 * (lo.theta + hi.theta);
    const HDerivatives &anchor = std::abs(lo.first) <= std::abs(hi.first) ? lo : hi;
    bool newton_step = false;
    if (allow_newton && !anchor.near_multiple && anchor.second < 0.0)
    {
      const double newton = anchor.theta - anchor.first / anchor.second;
      if (newton > left && newton < right)
      {
        trial = newton;
        newton_step = true;
      }
    }
    if (trial <= left || trial >= right)
    {
      break;
    }
    const HDerivatives mid = eval_h_derivatives(a, trial);
    ++evals;
    allow_newton = !newton_step || std::abs(mid.first) <= 0.5 * std::abs(anchor.first);
    if (improves(mid, best, a.n()))
    {
      best = mid;
    }
    if (std::abs(mid.first) <= tol * (1.0 + std::abs(mid.value)))
    {
      break;
    }
    if ((mid.first > 0.0) == (dir > 0.0))
    {
      lo = mid;
    }
    else
    {
      hi = mid;
    }
    if (std::abs(hi.theta - lo.theta) <= 1e-15 * (1.0 + std::abs(lo.theta)))
    {
      break;
    }
  }
  return best;
}

}  // namespace detail

/// Ascends from theta0 to a local maximizer of h. Newton steps on h' when
/// lambda_max is well separated, otherwise steps on the sign of h' with
/// bisection once a sign change is bracketed. The objective is non-decreasing
/// up to the rounding level of h.
inline LocalMax local_maximize(const Matrix &a, double theta0, double tol, int max_iter = 100)
{
  LocalMax out;
  HDerivatives cur = eval_h_derivatives(a, theta0);
  long evals = 1;
  double trust = 0.5;
  int it = 0;
  for (; it < max_iter; ++it)
  {
    if (std::abs(cur.first) <= tol * (1.0 + std::abs(cur.value)))
    {
      out.converged = true;
      break;
    }
    const double dir = cur.first > 0.0 ? 1.0 : -1.0;
    const bool newton = !cur.near_multiple && cur.second < 0.0;
    double step = newton ? -cur.first / cur.second : dir * trust;
    if (std::abs(step) > trust)
    {
      step = dir * trust;
    }

    bool moved = false;
    bool halved = false;
    const double min_step = 1e-15 * (1.0 + std::abs(cur.theta));
    while (std::abs(step) > min_step)
    {
      const HDerivatives next = eval_h_derivatives(a, cur.theta + step);
      ++evals;
      if (detail::improves(next, cur, a.n()))
      {
        trust = halved ? std::max(2.0 * std::abs(step), 1e-6) : std::min(2.0 * trust, 1.5);
        cur = next;
        moved = true;
        break;
      }
      if ((next.first > 0.0) != (dir > 0.0))
      {
        const HDerivatives found = detail::bisect_derivative(a, cur, next, dir, tol, evals);
        moved = found.theta != cur.theta;
        cur = found;
        break;
      }
      step *= 0.5;
      halved = true;
    }
    if (!moved)
    {
      // No ascent at bracket resolution: numerically stationary.
      out.converged = true;
      break;
    }
  }
  if (it == max_iter)
  {
    out.hit_cap = true;
  }
  out.theta = wrap_angle(cur.theta);
  out.value = cur.value;
  out.evals = evals;
  out.iterations = it;
  return out;
}

struct LsoOptions
{
  double tol_rel = 1e-14;
  double local_tol = 1e-12;
  int max_outer = 50;
  int max_local_iter = 100;
  LevelSetOptions level_set;
  GridOptions fallback;
};

/// Full record of one level-set run.
struct LsoReport
{
  RadiusResult result;
  std::vector<double> levels;  // gamma_k, strictly increasing
  LevelCrossings final_crossings;
  bool certified = false;  // final inflated level had no crossings
};

inline LsoReport compute_radius_lso_report(const Matrix &a, const LsoOptions &opts = {})
{
  detail::Stopwatch clock;
  LsoReport report;
  RadiusResult &res = report.result;
  res.method = Method::LSO;

  const double smax = sigma_max(a);
  if (smax == 0.0)
  {
    report.levels.push_back(0.0);
    report.certified = true;
    res.wall_seconds = clock.seconds();
    return report;
  }

  // Seeds: the direction -arg(lambda) maximizing Re(e^{i theta} lambda) for
  // each eigenvalue lambda of A, plus theta = 0.
  std::vector<double> seeds{0.0};
  const Eigen::VectorXcd lambda = eigenvalues(a);
  for (Index k = 0; k < lambda.size(); ++k)
  {
    if (std::abs(lambda(k)) > 1e-14 * smax)
    {
      const double theta = wrap_angle(-std::arg(lambda(k)));
      const bool seen = std::any_of(seeds.begin(), seeds.end(), [&](double s)
                                    { return detail::circular_distance(s, theta) < 1e-8; });
      if (!seen)
      {
        seeds.push_back(theta);
      }
    }
  }

  double gamma = -std::numeric_limits<double>::infinity();
  double theta_star = 0.0;
  auto absorb = [&](const LocalMax &lm)
  {
    res.h_evals += lm.evals;
    res.degenerate = res.degenerate || lm.hit_cap;
    if (lm.value > gamma)
    {
      gamma = lm.value;
      theta_star = lm.theta;
    }
  };
  for (double s : seeds)
  {
    absorb(local_maximize(a, s, opts.local_tol, opts.max_local_iter));
  }
  report.levels.push_back(gamma);

  for (int outer = 1; outer <= opts.max_outer; ++outer)
  {
    res.iterations = outer;
    const double level = gamma > 0.0 ? gamma * (1.0 + 2.0 * opts.tol_rel)
                                     : gamma + 2.0 * opts.tol_rel * smax;
    LevelCrossings lc = level_crossings(a, level, opts.level_set);
    res.h_evals += lc.h_evals;

    if (lc.whole_circle)
    {
      // Singular pencil or h constant at the level: the grid oracle decides.
      RadiusResult grid = compute_radius_grid(a, opts.fallback);
      res.h_evals += grid.h_evals;
      res.degenerate = true;
      if (grid.value > gamma)
      {
        gamma = grid.value;
        theta_star = grid.theta_star;
      }
      report.final_crossings = std::move(lc);
      break;
    }

    std::vector<double> starts;
    const std::size_t m = lc.angles.size();
    for (std::size_t i = 0; i < m; ++i)
    {
      const double lo = lc.angles[i];
      const double hi = (i + 1 < m) ? lc.angles[i + 1] : lc.angles[0] + two_pi;
      const double mid = 0.5 * (lo + hi);
      ++res.h_evals;
      if (eval_h_value(a, mid) > level)
      {
        starts.push_back(mid);
      }
    }
    if (starts.empty())
    {
      report.certified = true;
      report.final_crossings = std::move(lc);
      break;
    }

    const double previous = gamma;
    for (double s : starts)
    {
      absorb(local_maximize(a, s, opts.local_tol, opts.max_local_iter));
    }
    if (!(gamma > previous))
    {
      // Cannot happen in exact arithmetic: each start lies above the level.
      report.final_crossings = std::move(lc);
      break;
    }
    report.levels.push_back(gamma);
    if (outer == opts.max_outer)
    {
      throw IterationLimitError("level-set outer iteration cap reached", gamma, outer, level);
    }
  }

  res.value = std::max(gamma, 0.0);
  res.theta_star = wrap_angle(theta_star);
  res.wall_seconds = clock.seconds();
  return report;
}

inline RadiusResult compute_radius_lso(const Matrix &a, const LsoOptions &opts = {})
{
  return compute_radius_lso_report(a, opts).result;
}

inline RadiusResult compute_radius_lso(const Matrix &a, double tol_rel)
{
  LsoOptions opts;
  opts.tol_rel = tol_rel;
  return compute_radius_lso_report(a, opts).result;
}

}  // namespace numrad
