// Copyright the numrad authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include "numrad/matrix.hpp"

// Matrix Market reader/writer for dense square matrices.
//
// Reads `array` and `coordinate` layouts with `real`, `integer` or `complex`
// fields and `general`, `symmetric`, `skew-symmetric` or `hermitian`
// symmetry. Writes `array` layout, `real general` when every imaginary part is
// zero and `complex general` otherwise, with 17 significant digits.

namespace numrad
{

namespace detail
{

inline std::string lowercase(std::string s)
{
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace detail

inline Matrix read_matrix_market(std::istream &in, const std::string &origin = "<stream>")
{
  std::string line;
  if (!std::getline(in, line))
  {
    throw IoError("empty Matrix Market input", origin);
  }
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || detail::lowercase(object) != "matrix")
  {
    throw IoError("missing %%MatrixMarket matrix banner", origin);
  }
  format = detail::lowercase(format);
  field = detail::lowercase(field);
  symmetry = detail::lowercase(symmetry);
  const bool is_array = format == "array";
  if (!is_array && format != "coordinate")
  {
    throw IoError("unsupported format '" + format + "'", origin);
  }
  const bool is_complex = field == "complex";
  if (!is_complex && field != "real" && field != "integer" && field != "double")
  {
    throw IoError("unsupported field '" + field + "'", origin);
  }
  if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric" &&
      symmetry != "hermitian")
  {
    throw IoError("unsupported symmetry '" + symmetry + "'", origin);
  }

  do
  {
    if (!std::getline(in, line))
    {
      throw IoError("missing size line", origin);
    }
  } while (line.empty() || line.front() == '%' ||
           line.find_first_not_of(" \t\r") == std::string::npos);

  std::istringstream size_line(line);
  long rows = 0, cols = 0, nnz = 0;
  size_line >> rows >> cols;
  if (!is_array)
  {
    size_line >> nnz;
  }
  if (!size_line || rows < 1 || rows != cols)
  {
    throw IoError("expected a square matrix with n >= 1, size line: '" + line + "'", origin);
  }

  const Index n = rows;
  DenseMatrix m = DenseMatrix::Zero(n, n);
  auto read_value = [&](Complex &v)
  {
    double re = 0.0, im = 0.0;
    if (!(in >> re))
    {
      throw IoError("truncated or malformed entry list", origin);
    }
    if (is_complex && !(in >> im))
    {
      throw IoError("complex entry is missing its imaginary part", origin);
    }
    v = Complex(re, im);
  };
  auto mirror = [&](Index i, Index j, Complex v)
  {
    if (i == j)
    {
      return;
    }
    if (symmetry == "symmetric")
    {
      m(j, i) = v;
    }
    else if (symmetry == "skew-symmetric")
    {
      m(j, i) = -v;
    }
    else if (symmetry == "hermitian")
    {
      m(j, i) = std::conj(v);
    }
  };

  if (is_array)
  {
    // Column-major; symmetric variants list the lower triangle only.
    const bool general = symmetry == "general";
    for (Index j = 0; j < n; ++j)
    {
      Index start = general ? 0 : j;
      if (symmetry == "skew-symmetric")
      {
        start = j + 1;
      }
      for (Index i = start; i < n; ++i)
      {
        Complex v;
        read_value(v);
        m(i, j) = v;
        mirror(i, j, v);
      }
    }
  }
  else
  {
    for (long k = 0; k < nnz; ++k)
    {
      long i = 0, j = 0;
      if (!(in >> i >> j))
      {
        throw IoError("truncated coordinate entry list", origin);
      }
      if (i < 1 || i > n || j < 1 || j > n)
      {
        throw IoError("coordinate index out of range at entry " + std::to_string(k + 1), origin);
      }
      Complex v;
      read_value(v);
      m(i - 1, j - 1) += v;
      mirror(i - 1, j - 1, v);
    }
  }
  return Matrix(std::move(m));
}

inline Matrix read_matrix_market(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw IoError("cannot open file for reading", path);
  }
  return read_matrix_market(in, path);
}

inline void write_matrix_market(std::ostream &out, const Matrix &a)
{
  const bool real = a.is_real();
  out << "%%MatrixMarket matrix array " << (real ? "real" : "complex") << " general\n";
  out << a.n() << ' ' << a.n() << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (Index j = 0; j < a.n(); ++j)
  {
    for (Index i = 0; i < a.n(); ++i)
    {
      out << a(i, j).real();
      if (!real)
      {
        out << ' ' << a(i, j).imag();
      }
      out << '\n';
    }
  }
}

inline void write_matrix_market(const std::string &path, const Matrix &a)
{
  std::ofstream out(path);
  if (!out)
  {
    throw IoError("cannot open file for writing", path);
  }
  write_matrix_market(out, a);
  if (!out)
  {
    throw IoError("write failed", path);
  }
}

}  // namespace numrad
