// Copyright the numrad authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <string>

#ifndef lapack_complex_float
#define lapack_complex_float std::complex<float>
#endif
#ifndef lapack_complex_double
#define lapack_complex_double std::complex<double>
#endif
#include <lapacke.h>

#include "numrad/matrix.hpp"

namespace numrad::detail
{

/// Homogeneous eigenvalues (alpha_k, beta_k) of the pencil a - lambda b.
struct PencilEigenvalues
{
  DenseVector alpha;
  DenseVector beta;
};

/// QZ via LAPACK zggev. Both arguments are overwritten copies.
inline PencilEigenvalues generalized_eigenvalues(DenseMatrix a, DenseMatrix b)
{
  const auto n = static_cast<lapack_int>(a.rows());
  PencilEigenvalues out{DenseVector(a.rows()), DenseVector(a.rows())};
  lapack_complex_double dummy{};
  const lapack_int info =
      LAPACKE_zggev(LAPACK_COL_MAJOR, 'N', 'N', n, a.data(), n, b.data(), n, out.alpha.data(),
                    out.beta.data(), &dummy, 1, &dummy, 1);
  if (info != 0)
  {
    throw Error("LAPACK zggev failed with info=" + std::to_string(info));
  }
  return out;
}

/// Eigenvalues of a real square matrix via LAPACK dgeev (balanced).
/// Returns false when the QR iteration fails to converge.
inline bool real_eigenvalues(Eigen::MatrixXd a, Eigen::VectorXcd &out)
{
  const auto n = static_cast<lapack_int>(a.rows());
  Eigen::VectorXd wr(a.rows());
  Eigen::VectorXd wi(a.rows());
  double dummy = 0.0;
  const lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, a.data(), n, wr.data(),
                                        wi.data(), &dummy, 1, &dummy, 1);
  if (info != 0)
  {
    return false;
  }
  out.resize(a.rows());
  for (Eigen::Index k = 0; k < a.rows(); ++k)
  {
    out(k) = std::complex<double>(wr(k), wi(k));
  }
  return true;
}

}  // namespace numrad::detail
