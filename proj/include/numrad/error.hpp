// Copyright the numrad authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace numrad
{

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error
{
public:
  using Error::Error;
};

/// A dense eigensolver or SVD did not converge.
class EigensolverError : public Error
{
public:
  EigensolverError(const std::string &what, double theta, std::ptrdiff_t n)
    : Error(what + " (theta=" + std::to_string(theta) + ", n=" + std::to_string(n) + ")"),
      theta(theta), n(n)
  {
  }

  double theta;
  std::ptrdiff_t n;
};

/// Adaptive Chebyshev interpolation hit its degree cap without coefficient decay.
class InterpolationError : public Error
{
public:
  InterpolationError(const std::string &what, std::vector<double> coeffs)
    : Error(what), coefficient_profile(std::move(coeffs))
  {
  }

  std::vector<double> coefficient_profile;
};

/// An iterative method exhausted its iteration budget.
class IterationLimitError : public Error
{
public:
  IterationLimitError(const std::string &what, double best_value, int iterations,
                      double bound = 0.0)
    : Error(what), best_value(best_value), iterations(iterations), bound(bound)
  {
  }

  double best_value;
  int iterations;
  // Method specific: duality-gap bound for the SDP solver, last level for LSO.
  double bound;
};

/// Input larger than a method's documented size limit.
class SizeLimitError : public Error
{
public:
  SizeLimitError(const std::string &what, std::ptrdiff_t n, std::ptrdiff_t limit)
    : Error(what), n(n), limit(limit)
  {
  }

  std::ptrdiff_t n;
  std::ptrdiff_t limit;
};

class IoError : public Error
{
public:
  IoError(const std::string &what, std::string path)
    : Error(path + ": " + what), path(std::move(path))
  {
  }

  std::string path;
};

}  // namespace numrad
