// Copyright the numrad authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include "numrad/matrix.hpp"

// Seeded standard-normal test matrices.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard, seeded through std::seed_seq (also fully specified). The library
// distributions are implementation-defined, so uniforms and normals are
// produced here: a uniform in [0, 1) from the top 53 bits of one draw, and
// normals by the Marsaglia polar method. Entries are filled column by column;
// complex entries draw the real part, then the imaginary part.

namespace numrad
{

enum class Field
{
  Real,
  Complex
};

inline std::string_view to_string(Field f) { return f == Field::Real ? "real" : "complex"; }

inline std::optional<Field> parse_field(std::string_view s)
{
  if (s == "real")
  {
    return Field::Real;
  }
  if (s == "complex")
  {
    return Field::Complex;
  }
  return std::nullopt;
}

/// Standard normal variates from a portable engine.
class NormalStream
{
public:
  explicit NormalStream(std::seed_seq &seq) : engine_(seq) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double next()
  {
    if (has_spare_)
    {
      has_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do
    {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    has_spare_ = true;
    return u * factor;
  }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// n x n matrix with i.i.d. standard normal entries (real and imaginary parts
/// independently in the complex case). Same (n, field, seed), same matrix.
inline Matrix gen_random_matrix(Index n, Field field, std::uint64_t seed)
{
  if (n < 1)
  {
    throw DimensionError("random matrix size must be >= 1, got " + std::to_string(n));
  }
  const auto un = static_cast<std::uint64_t>(n);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(un), static_cast<std::uint32_t>(un >> 32),
                    static_cast<std::uint32_t>(field == Field::Real ? 0 : 1)};
  NormalStream normal(seq);
  DenseMatrix m(n, n);
  for (Index j = 0; j < n; ++j)
  {
    for (Index i = 0; i < n; ++i)
    {
      const double re = normal.next();
      const double im = field == Field::Complex ? normal.next() : 0.0;
      m(i, j) = Complex(re, im);
    }
  }
  return Matrix(std::move(m));
}

}  // namespace numrad
