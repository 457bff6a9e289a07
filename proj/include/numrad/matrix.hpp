// Copyright the numrad authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <Eigen/Dense>
#include "numrad/error.hpp"

namespace numrad
{

using Complex = std::complex<double>;
using Index = Eigen::Index;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

/// Square dense complex input matrix. Real matrices are the case where every
/// imaginary part is exactly zero; `is_real()` reports that.
class Matrix
{
public:
  explicit Matrix(DenseMatrix entries) : entries_(std::move(entries))
  {
    if (entries_.rows() < 1 || entries_.rows() != entries_.cols())
    {
      throw DimensionError("Matrix must be square with n >= 1, got " +
                           std::to_string(entries_.rows()) + "x" +
                           std::to_string(entries_.cols()));
    }
    is_real_ = (entries_.imag().array() == 0.0).all();
  }

  static Matrix from_real(const Eigen::MatrixXd &entries)
  {
    return Matrix(DenseMatrix(entries.cast<Complex>()));
  }

  static Matrix zero(Index n) { return Matrix(DenseMatrix(DenseMatrix::Zero(n, n))); }
  static Matrix identity(Index n) { return Matrix(DenseMatrix(DenseMatrix::Identity(n, n))); }

  /// n x n nilpotent shift: ones on the superdiagonal.
  static Matrix shift(Index n)
  {
    DenseMatrix s = DenseMatrix::Zero(n, n);
    for (Index i = 0; i + 1 < n; ++i)
    {
      s(i, i + 1) = 1.0;
    }
    return Matrix(std::move(s));
  }

  Index n() const { return entries_.rows(); }
  bool is_real() const { return is_real_; }
  const DenseMatrix &entries() const { return entries_; }
  Complex operator()(Index i, Index j) const { return entries_(i, j); }

  Matrix adjoint() const { return Matrix(DenseMatrix(entries_.adjoint())); }
  Matrix scaled(Complex alpha) const { return Matrix(DenseMatrix(alpha * entries_)); }

private:
  DenseMatrix entries_;
  bool is_real_ = false;
};

/// Dense Hermitian matrix. Construction stores (M + M^*)/2 so the stored
/// entries equal their own conjugate transpose exactly.
class HermitianMatrix
{
public:
  HermitianMatrix() = default;

  explicit HermitianMatrix(const DenseMatrix &m)
  {
    if (m.rows() != m.cols())
    {
      throw DimensionError("HermitianMatrix must be square");
    }
    const Index size = m.rows();
    entries_.resize(size, size);
    for (Index j = 0; j < size; ++j)
    {
      entries_(j, j) = Complex(m(j, j).real(), 0.0);
      for (Index i = j + 1; i < size; ++i)
      {
        const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
        entries_(i, j) = v;
        entries_(j, i) = std::conj(v);
      }
    }
  }

  static HermitianMatrix zero(Index m) { return HermitianMatrix(DenseMatrix::Zero(m, m)); }

  Index size() const { return entries_.rows(); }
  const DenseMatrix &entries() const { return entries_; }
  Complex operator()(Index i, Index j) const { return entries_(i, j); }

private:
  DenseMatrix entries_;
};

/// Largest eigenvalue of a Hermitian matrix with a unit eigenvector.
/// `gap` is the distance to the next eigenvalue (infinity for 1x1).
struct EigPair
{
  double value = 0.0;
  DenseVector vector;
  double gap = 0.0;
  bool near_multiple = false;
};

}  // namespace numrad
