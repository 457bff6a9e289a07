// Copyright the numrad authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>
#include "numrad/parallel.hpp"
#include "numrad/result.hpp"
#include "numrad/spectral.hpp"

// Brute-force reference for max_theta h(theta): a uniform grid followed by
// golden-section refinement of the best few local maxima. Cannot certify; a
// spike narrower than the grid spacing can be missed.

namespace numrad
{

struct GridOptions
{
  long num_points = 200000;
  double refine_tol = 1e-13;
  int basins = 5;
};

/// Golden-section search for a maximum of f on [lo, hi]. Returns (x, f(x)) of
/// the best point seen and adds the number of evaluations to `evals`.
template <class F>
std::pair<double, double> golden_section_max(F &&f, double lo, double hi, double width,
                                             long &evals)
{
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  evals += 2;
  while (hi - lo > width)
  {
    if (f1 >= f2)
    {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      if (x1 == x2 || x1 <= lo)
      {
        break;
      }
      f1 = f(x1);
      ++evals;
    }
    else
    {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      if (x2 == x1 || x2 >= hi)
      {
        break;
      }
      f2 = f(x2);
      ++evals;
    }
  }
  return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

inline RadiusResult compute_radius_grid(const Matrix &a, const GridOptions &opts = {})
{
  detail::Stopwatch clock;
  const long count = std::max(16L, opts.num_points);
  const double step = two_pi / static_cast<double>(count);

  // Real A gives H(2 pi - theta) = conj(H(theta)), so h(theta_{count-j}) = h(theta_j).
  const bool mirror = a.is_real();
  const long distinct = mirror ? count / 2 + 1 : count;
  std::vector<double> samples(static_cast<std::size_t>(count));
  parallel_for(0, distinct, [&](std::ptrdiff_t j)
               { samples[static_cast<std::size_t>(j)] = eval_h_value(a, step * static_cast<double>(j)); });
  for (long j = distinct; j < count; ++j)
  {
    samples[static_cast<std::size_t>(j)] = samples[static_cast<std::size_t>(count - j)];
  }
  long evals = distinct;

  // Circular local maxima, best first; ties resolved by index.
  std::vector<long> peaks;
  for (long j = 0; j < count; ++j)
  {
    const double prev = samples[static_cast<std::size_t>((j + count - 1) % count)];
    const double next = samples[static_cast<std::size_t>((j + 1) % count)];
    const double here = samples[static_cast<std::size_t>(j)];
    if (here >= prev && here >= next)
    {
      peaks.push_back(j);
    }
  }
  std::stable_sort(peaks.begin(), peaks.end(), [&](long x, long y)
                   { return samples[static_cast<std::size_t>(x)] > samples[static_cast<std::size_t>(y)]; });

  RadiusResult best;
  best.method = Method::GRID;
  best.value = samples[0];
  best.theta_star = 0.0;
  for (long j = 0; j < count; ++j)
  {
    if (samples[static_cast<std::size_t>(j)] > best.value)
    {
      best.value = samples[static_cast<std::size_t>(j)];
      best.theta_star = step * static_cast<double>(j);
    }
  }

  auto h = [&](double t) { return eval_h_value(a, t); };
  const int basins = std::min<int>(opts.basins, static_cast<int>(peaks.size()));
  for (int b = 0; b < basins; ++b)
  {
    const double centre = step * static_cast<double>(peaks[static_cast<std::size_t>(b)]);
    const auto [theta, value] =
        golden_section_max(h, centre - step, centre + step, opts.refine_tol, evals);
    if (value > best.value)
    {
      best.value = value;
      best.theta_star = wrap_angle(theta);
    }
  }
  best.iterations = basins;
  best.h_evals = evals;
  best.wall_seconds = clock.seconds();
  return best;
}

}  // namespace numrad
