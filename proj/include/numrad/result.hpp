// Copyright the numrad authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace numrad
{

enum class Method
{
  LSO,
  CHEB,
  SDP,
  GRID
};

inline constexpr std::array<Method, 4> all_methods{Method::LSO, Method::CHEB, Method::SDP,
                                                    Method::GRID};

inline std::string_view to_string(Method m)
{
  switch (m)
  {
    case Method::LSO:
      return "lso";
    case Method::CHEB:
      return "cheb";
    case Method::SDP:
      return "sdp";
    case Method::GRID:
      return "grid";
  }
  return "unknown";
}

inline std::optional<Method> parse_method(std::string_view s)
{
  for (Method m : all_methods)
  {
    if (s == to_string(m))
    {
      return m;
    }
  }
  return std::nullopt;
}

/// Outcome of one numerical radius computation.
struct RadiusResult
{
  double value = 0.0;
  double theta_star = 0.0;  // in [0, 2 pi)
  Method method = Method::LSO;
  int iterations = 0;
  long h_evals = 0;
  double wall_seconds = 0.0;
  // Set when a method had to leave its main path (singular pencil, colleague
  // solver fallback, local optimizer iteration cap).
  bool degenerate = false;
};

namespace detail
{

class Stopwatch
{
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}

  double seconds() const
  {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

}  // namespace numrad
