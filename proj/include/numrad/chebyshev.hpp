// Copyright the numrad authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <vector>
#include <Eigen/Eigenvalues>
#include <fftw3.h>
#include "numrad/error.hpp"
#include "numrad/detail/lapack.hpp"
#include "numrad/matrix.hpp"
#include "numrad/parallel.hpp"

// Adaptive Chebyshev interpolation on an interval and global maximization of
// the interpolant through the roots of its derivative (colleague matrix).
//
// Samples are taken on Chebyshev-Lobatto grids x_j = cos(pi j / N),
// j = 0..N, of sizes N + 1 = 17, 33, 65, ... and reused across refinements.
// Coefficients come from a type-I discrete cosine transform of the samples.

namespace numrad
{

/// Chebyshev-T series sum_k coeffs[k] T_k(x) with x the affine image of
/// theta in [a, b] onto [-1, 1].
struct ChebSeries
{
  std::vector<double> coeffs{0.0};
  double a = -1.0;
  double b = 1.0;
  // Largest |coeff| in the trailing 20% of the converged grid.
  double tail_bound = 0.0;
  // Largest |coeff| before truncation and the relative tolerance used.
  double scale = 0.0;
  double tol = 0.0;

  long degree() const { return static_cast<long>(coeffs.size()) - 1; }

  double to_unit(double theta) const { return (2.0 * theta - a - b) / (b - a); }
  double from_unit(double x) const { return 0.5 * (a + b) + 0.5 * (b - a) * x; }

  double operator()(double theta) const;
};

struct ChebOptions
{
  double tol = 1e-14;
  long max_points = 65537;  // 2^16 + 1
  int min_log2 = 4;
};

namespace detail
{

inline std::mutex &fftw_planner_mutex()
{
  static std::mutex m;
  return m;
}

/// Chebyshev coefficients of the interpolant through values[j] = f(cos(pi j/N)).
inline std::vector<double> chebyshev_coefficients(std::vector<double> values)
{
  const auto count = static_cast<int>(values.size());
  if (count == 1)
  {
    return values;
  }
  std::vector<double> out(values.size());
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_r2r_1d(count, values.data(), out.data(), FFTW_REDFT00, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  const double n = count - 1;
  for (double &c : out)
  {
    c /= n;
  }
  out.front() *= 0.5;
  out.back() *= 0.5;
  return out;
}

inline double clenshaw(const std::vector<double> &c, double x)
{
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = c.size(); k-- > 1;)
  {
    const double b0 = 2.0 * x * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

/// Coefficients of d/dx of a Chebyshev series on [-1, 1].
inline std::vector<double> chebyshev_derivative(const std::vector<double> &c)
{
  const std::size_t n = c.size();
  if (n <= 1)
  {
    return {0.0};
  }
  std::vector<double> d(n - 1, 0.0);
  // d_{k-1} = d_{k+1} + 2 k c_k, halved for k - 1 = 0.
  double next = 0.0;  // d_{k+1}
  double curr = 0.0;  // d_k
  for (std::size_t k = n - 1; k >= 1; --k)
  {
    const double prev = next + 2.0 * static_cast<double>(k) * c[k];
    d[k - 1] = prev;
    next = curr;
    curr = prev;
  }
  d[0] *= 0.5;
  return d;
}

inline void chop_trailing(std::vector<double> &c, double threshold)
{
  while (c.size() > 1 && std::abs(c.back()) <= threshold)
  {
    c.pop_back();
  }
}

/// Real roots in [-1, 1] of a series of degree >= 1 from the eigenvalues of
/// its colleague matrix. Throws EigensolverError on failure.
inline std::vector<double> colleague_roots(const std::vector<double> &c)
{
  const auto d = static_cast<Index>(c.size()) - 1;
  std::vector<double> roots;
  if (d < 1)
  {
    return roots;
  }
  if (d == 1)
  {
    const double x = -c[0] / c[1];
    if (std::abs(x) <= 1.0 + 1e-6)
    {
      roots.push_back(std::clamp(x, -1.0, 1.0));
    }
    return roots;
  }
  Eigen::MatrixXd col = Eigen::MatrixXd::Zero(d, d);
  col(0, 1) = 1.0;
  for (Index i = 1; i < d; ++i)
  {
    col(i, i - 1) = 0.5;
    if (i + 1 < d)
    {
      col(i, i + 1) = 0.5;
    }
  }
  for (Index j = 0; j < d; ++j)
  {
    col(d - 1, j) -= c[static_cast<std::size_t>(j)] / (2.0 * c[static_cast<std::size_t>(d)]);
  }
  Eigen::VectorXcd eig;
  if (!real_eigenvalues(std::move(col), eig))
  {
    throw EigensolverError("colleague matrix eigensolver failed", 0.0, d);
  }
  for (Index k = 0; k < d; ++k)
  {
    const std::complex<double> z = eig(k);
    if (std::abs(z.imag()) <= 1e-6 && std::abs(z.real()) <= 1.0 + 1e-6)
    {
      roots.push_back(std::clamp(z.real(), -1.0, 1.0));
    }
  }
  return roots;
}

/// Coefficients on [-1, 1] of the series c restricted to [lo, hi].
inline std::vector<double> restrict_series(const std::vector<double> &c, double lo, double hi)
{
  const std::size_t n = c.size();
  std::vector<double> values(n);
  const double denom = static_cast<double>(n - 1);
  for (std::size_t j = 0; j < n; ++j)
  {
    const double x = std::cos(std::numbers::pi * static_cast<double>(j) / denom);
    values[j] = clenshaw(c, 0.5 * (lo + hi) + 0.5 * (hi - lo) * x);
  }
  return chebyshev_coefficients(std::move(values));
}

// Subdivide until the degree is small enough for a dense colleague solve.
inline void roots_recursive(const std::vector<double> &c, double lo, double hi,
                            double chop_threshold, int depth, std::vector<double> &out)
{
  constexpr std::size_t max_direct = 51;
  if (c.size() <= max_direct || depth >= 40)
  {
    for (double x : colleague_roots(c))
    {
      out.push_back(0.5 * (lo + hi) + 0.5 * (hi - lo) * x);
    }
    return;
  }
  // Split slightly off centre so that a root at the midpoint is not shared.
  constexpr double split = -0.004849834917525;
  double abs_sum = 0.0;
  for (double v : c)
  {
    abs_sum += std::abs(v);
  }
  // Resampling error of a restricted series is about eps * sum|c|.
  const double floor =
      std::max(chop_threshold, 8.0 * std::numeric_limits<double>::epsilon() * abs_sum);
  std::vector<double> left = restrict_series(c, -1.0, split);
  std::vector<double> right = restrict_series(c, split, 1.0);
  chop_trailing(left, floor);
  chop_trailing(right, floor);
  const double mid = 0.5 * (lo + hi) + 0.5 * (hi - lo) * split;
  roots_recursive(left, lo, mid, chop_threshold, depth + 1, out);
  roots_recursive(right, mid, hi, chop_threshold, depth + 1, out);
}

/// Outcome of adaptive sampling on one interval.
struct AdaptiveFit
{
  bool converged = false;
  ChebSeries series;
  std::vector<double> last_coeffs;
  long evals = 0;
  int refinements = 0;
};

template <class F>
AdaptiveFit adaptive_fit(F &&f, double a, double b, const ChebOptions &opts)
{
  AdaptiveFit fit;
  std::vector<double> samples;  // at cos(pi j / N), j = 0..N
  const double half = 0.5 * (b - a);
  const double centre = 0.5 * (a + b);
  auto node = [&](long j, long n)
  {
    return centre + half * std::cos(std::numbers::pi * static_cast<double>(j) /
                                    static_cast<double>(n));
  };

  for (int k = opts.min_log2;; ++k)
  {
    const long n = 1L << k;
    if (n + 1 > opts.max_points)
    {
      break;
    }
    std::vector<double> next(static_cast<std::size_t>(n + 1));
    if (samples.empty())
    {
      parallel_for(0, n + 1, [&](std::ptrdiff_t j)
                   { next[static_cast<std::size_t>(j)] = f(node(j, n)); });
      fit.evals += n + 1;
    }
    else
    {
      // Even nodes of the finer grid are the previous grid.
      for (long j = 0; j <= n / 2; ++j)
      {
        next[static_cast<std::size_t>(2 * j)] = samples[static_cast<std::size_t>(j)];
      }
      parallel_for(0, n / 2, [&](std::ptrdiff_t i)
                   {
                     const long j = 2 * i + 1;
                     next[static_cast<std::size_t>(j)] = f(node(j, n));
                   });
      fit.evals += n / 2;
    }
    samples = std::move(next);
    ++fit.refinements;

    std::vector<double> c = chebyshev_coefficients(samples);
    double scale = 0.0;
    for (double v : c)
    {
      scale = std::max(scale, std::abs(v));
    }
    const auto tail_start = static_cast<std::size_t>(std::floor(0.8 * static_cast<double>(c.size())));
    double tail = 0.0;
    for (std::size_t i = tail_start; i < c.size(); ++i)
    {
      tail = std::max(tail, std::abs(c[i]));
    }
    const double threshold = opts.tol * scale;
    if (tail <= threshold)
    {
      fit.converged = true;
      chop_trailing(c, threshold);
      if (scale == 0.0)
      {
        c.assign(1, 0.0);
      }
      fit.series.coeffs = std::move(c);
      fit.series.a = a;
      fit.series.b = b;
      fit.series.tail_bound = tail;
      fit.series.scale = scale;
      fit.series.tol = opts.tol;
      return fit;
    }
    fit.last_coeffs = std::move(c);
  }
  return fit;
}

}  // namespace detail

inline double ChebSeries::operator()(double theta) const
{
  return detail::clenshaw(coeffs, to_unit(theta));
}

/// Adaptive Chebyshev interpolant of f on [a, b]. Throws InterpolationError,
/// carrying the last coefficient profile, when the grid size cap is reached
/// before the trailing coefficients decay below tol * max|coeff|.
template <class F>
ChebSeries cheb_interpolate(F &&f, double a, double b, const ChebOptions &opts = {})
{
  detail::AdaptiveFit fit = detail::adaptive_fit(f, a, b, opts);
  if (!fit.converged)
  {
    throw InterpolationError("Chebyshev coefficients did not decay below tolerance within " +
                                 std::to_string(opts.max_points) + " points",
                             std::move(fit.last_coeffs));
  }
  return std::move(fit.series);
}

struct ChebMax
{
  double theta = 0.0;
  double value = 0.0;
  bool fallback = false;  // colleague solve failed; dense sampling used
};

namespace detail
{

inline ChebMax sampled_max(const ChebSeries &s)
{
  const long count = 10 * std::max<long>(s.degree(), 1) + 1;
  const double step = (s.b - s.a) / static_cast<double>(count - 1);
  long best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (long j = 0; j < count; ++j)
  {
    const double v = s(s.a + step * static_cast<double>(j));
    if (v > best_value)
    {
      best_value = v;
      best = j;
    }
  }
  ChebMax out{s.a + step * static_cast<double>(best), best_value, true};
  if (best > 0 && best + 1 < count)
  {
    // Vertex of the parabola through the three samples around the best one.
    const double x0 = out.theta;
    const double fm = s(x0 - step);
    const double fp = s(x0 + step);
    const double curvature = fm - 2.0 * best_value + fp;
    if (curvature < 0.0)
    {
      const double x = x0 + 0.5 * step * (fm - fp) / curvature;
      const double v = s(x);
      if (v > out.value)
      {
        out.theta = x;
        out.value = v;
      }
    }
  }
  return out;
}

}  // namespace detail

/// Global maximum of the series over its interval: candidates are the real
/// roots of the derivative and both endpoints. Ties go to the smaller theta.
inline ChebMax cheb_max(const ChebSeries &s)
{
  std::vector<double> candidates{-1.0, 1.0};
  double abs_sum = 0.0;
  for (double c : s.coeffs)
  {
    abs_sum += std::abs(c);
  }
  if (s.degree() >= 2)
  {
    std::vector<double> d = detail::chebyshev_derivative(s.coeffs);
    double d_scale = 0.0;
    for (double c : d)
    {
      d_scale = std::max(d_scale, std::abs(c));
    }
    const double chop = 4.0 * std::numeric_limits<double>::epsilon() * d_scale;
    detail::chop_trailing(d, chop);
    try
    {
      detail::roots_recursive(d, -1.0, 1.0, chop, 0, candidates);
    }
    catch (const EigensolverError &)
    {
      return detail::sampled_max(s);
    }
  }

  const double tie = 4.0 * std::numeric_limits<double>::epsilon() * abs_sum;
  ChebMax best{s.a, -std::numeric_limits<double>::infinity(), false};
  for (double x : candidates)
  {
    const double theta = x == -1.0 ? s.a : (x == 1.0 ? s.b : s.from_unit(x));
    const double v = detail::clenshaw(s.coeffs, x);
    const bool higher = v > best.value + tie;
    const bool tied = std::abs(v - best.value) <= tie;
    if (higher || (tied && theta < best.theta))
    {
      best.theta = theta;
      best.value = v;
    }
  }
  return best;
}

}  // namespace numrad
