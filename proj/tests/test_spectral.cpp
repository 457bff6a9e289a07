// Copyright the numrad authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <gtest/gtest.h>
#include "numrad/random.hpp"
#include "numrad/spectral.hpp"

using namespace numrad;

TEST(Matrix, RejectsNonSquareAndEmpty)
{
  EXPECT_THROW(Matrix(DenseMatrix(DenseMatrix::Zero(2, 3))), DimensionError);
  EXPECT_THROW(Matrix(DenseMatrix(0, 0)), DimensionError);
}

TEST(Matrix, DetectsRealInput)
{
  EXPECT_TRUE(Matrix::identity(3).is_real());
  DenseMatrix m = DenseMatrix::Zero(2, 2);
  m(1, 0) = Complex(0.0, 1e-300);
  EXPECT_FALSE(Matrix(m).is_real());
}

TEST(HermitianMatrix, StoresExactlyHermitianPart)
{
  const Matrix a = gen_random_matrix(5, Field::Complex, 3);
  const HermitianMatrix h(a.entries());
  EXPECT_TRUE(h.entries() == h.entries().adjoint());
  EXPECT_NEAR((h.entries() - 0.5 * (a.entries() + a.entries().adjoint())).norm(), 0.0, 1e-15);
}

TEST(WrapAngle, MapsIntoHalfOpenInterval)
{
  EXPECT_DOUBLE_EQ(wrap_angle(0.0), 0.0);
  EXPECT_DOUBLE_EQ(wrap_angle(two_pi), 0.0);
  EXPECT_NEAR(wrap_angle(-0.5), two_pi - 0.5, 1e-15);
  EXPECT_NEAR(wrap_angle(7.0 * two_pi + 1.0), 1.0, 1e-13);
}

TEST(BuildH, MatchesDefinition)
{
  const Matrix a = gen_random_matrix(4, Field::Complex, 11);
  const double theta = 0.7;
  const Complex e = std::polar(1.0, theta);
  const DenseMatrix expected = 0.5 * (e * a.entries() + std::conj(e) * a.entries().adjoint());
  EXPECT_LT((build_h_matrix(a, theta).entries() - expected).norm(), 1e-14);
}

TEST(EvalH, IdentityGivesCosine)
{
  const Matrix a = Matrix::identity(3);
  for (double theta : {0.0, 0.4, 2.0, 4.5})
  {
    EXPECT_NEAR(eval_h_value(a, theta), std::cos(theta), 1e-15);
    const EigPair p = eval_h(a, theta);
    EXPECT_NEAR(p.value, std::cos(theta), 1e-15);
    EXPECT_TRUE(p.near_multiple);
  }
}

TEST(EvalH, DiagonalGivesAbsCosine)
{
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1.0;
  const Matrix a = Matrix::from_real(d);
  for (double theta : {0.1, 1.0, 2.0, 3.0, 5.0})
  {
    EXPECT_NEAR(eval_h_value(a, theta), std::abs(std::cos(theta)), 1e-15);
  }
}

TEST(EvalH, JordanBlockIsConstant)
{
  const Matrix a = Matrix::shift(2);
  for (double theta : {0.0, 1.0, 3.0})
  {
    EXPECT_NEAR(eval_h_value(a, theta), 0.5, 1e-15);
  }
}

TEST(EvalH, EigenvectorIsUnitWithFixedPhase)
{
  const Matrix a = gen_random_matrix(6, Field::Complex, 5);
  const EigPair p = eval_h(a, 1.3);
  EXPECT_NEAR(p.vector.norm(), 1.0, 1e-14);
  Index first = 0;
  while (std::abs(p.vector(first)) <= 1e-12)
  {
    ++first;
  }
  EXPECT_EQ(p.vector(first).imag(), 0.0);
  EXPECT_GT(p.vector(first).real(), 0.0);
  const DenseVector r = build_h_matrix(a, 1.3).entries() * p.vector - p.value * p.vector;
  EXPECT_LT(r.norm(), 1e-13);
  EXPECT_GT(p.gap, 0.0);
}

TEST(EvalHDerivative, MatchesFiniteDifference)
{
  for (std::uint64_t seed = 0; seed < 5; ++seed)
  {
    const Matrix a = gen_random_matrix(7, seed % 2 ? Field::Complex : Field::Real, seed);
    const double theta = 0.3 + seed;
    const double step = 1e-6;
    const double fd = (eval_h_value(a, theta + step) - eval_h_value(a, theta - step)) / (2 * step);
    const EigPair p = eval_h(a, theta);
    EXPECT_NEAR(eval_h_derivative(a, theta, p.vector), fd, 1e-7 * (1.0 + std::abs(fd)));
  }
}

TEST(EvalHDerivatives, SecondDerivativeMatchesFiniteDifference)
{
  for (std::uint64_t seed = 0; seed < 5; ++seed)
  {
    const Matrix a = gen_random_matrix(6, Field::Complex, 100 + seed);
    const double theta = 1.1 * seed;
    const HDerivatives d = eval_h_derivatives(a, theta);
    const double step = 1e-4;
    const double fd = (eval_h_value(a, theta + step) - 2.0 * d.value +
                       eval_h_value(a, theta - step)) / (step * step);
    EXPECT_NEAR(d.second, fd, 1e-5 * (1.0 + std::abs(fd)));
    EXPECT_FALSE(d.near_multiple);
  }
}

TEST(Norms, SigmaMaxAndSpectralRadius)
{
  Eigen::MatrixXd m(2, 2);
  m << 3.0, 0.0, 0.0, -4.0;
  const Matrix a = Matrix::from_real(m);
  EXPECT_NEAR(sigma_max(a), 4.0, 1e-14);
  EXPECT_NEAR(spectral_radius(a), 4.0, 1e-14);
  EXPECT_NEAR(sigma_max(Matrix::shift(3)), 1.0, 1e-14);
  EXPECT_NEAR(spectral_radius(Matrix::shift(3)), 0.0, 1e-14);
}

TEST(LambdaMin, OfDiagonal)
{
  DenseMatrix m = DenseMatrix::Zero(3, 3);
  m.diagonal() << 2.0, -1.5, 0.25;
  EXPECT_NEAR(lambda_min(HermitianMatrix(m)), -1.5, 1e-15);
}

TEST(EvalHValue, MatchesDenseEigensolver)
{
  for (Index n : {2, 3, 7, 16, 33})
  {
    for (Field f : {Field::Real, Field::Complex})
    {
      const Matrix a = gen_random_matrix(n, f, static_cast<std::uint64_t>(n));
      for (double theta : {0.0, 0.4, 2.9, 5.5})
      {
        Eigen::SelfAdjointEigenSolver<DenseMatrix> es(build_h_matrix(a, theta).entries(),
                                                      Eigen::EigenvaluesOnly);
        EXPECT_NEAR(eval_h_value(a, theta), es.eigenvalues()(n - 1), 1e-14 * sigma_max(a))
            << "n=" << n << " theta=" << theta;
      }
    }
  }
}

TEST(EvalHValue, RepeatedAndReducedSpectra)
{
  // Multiple top eigenvalue, split tridiagonal, and a zero matrix.
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(4, 4);
  d.diagonal() << 2.0, -1.0, 2.0, 2.0;
  EXPECT_NEAR(eval_h_value(Matrix::from_real(d), 0.0), 2.0, 1e-15);
  EXPECT_NEAR(eval_h_value(Matrix::identity(5), 1.0), std::cos(1.0), 1e-15);
  EXPECT_NEAR(eval_h_value(Matrix::shift(6), 0.3), std::cos(std::numbers::pi / 7), 1e-15);
  EXPECT_EQ(eval_h_value(Matrix::zero(3), 0.7), 0.0);
}

TEST(EvalHValue, RejectsNonFiniteInput)
{
  DenseMatrix m = DenseMatrix::Zero(3, 3);
  m(1, 2) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(eval_h_value(Matrix(m), 0.0), EigensolverError);
}

TEST(EvalHDerivatives, TridiagonalPathMatchesDensePath)
{
  for (Index n : {2, 5, 12, 31})
  {
    for (Field f : {Field::Real, Field::Complex})
    {
      const Matrix a = gen_random_matrix(n, f, static_cast<std::uint64_t>(100 + n));
      const double s = sigma_max(a);
      for (double theta : {0.1, 1.9, 4.4})
      {
        HDerivatives fast;
        ASSERT_TRUE(detail::h_derivatives_fast(a, theta, fast)) << "n=" << n;
        const HDerivatives dense = detail::h_derivatives_dense(a, theta);
        EXPECT_NEAR(fast.value, dense.value, 1e-14 * s);
        EXPECT_NEAR(fast.first, dense.first, 1e-13 * s);
        EXPECT_NEAR(fast.second, dense.second, 1e-9 * (s + std::abs(dense.second)));
        EXPECT_NEAR(fast.gap, dense.gap, 1e-13 * s);
        EXPECT_EQ(fast.value, eval_h_value(a, theta));
      }
    }
  }
}

TEST(EvalHDerivatives, NearMultipleUsesDensePath)
{
  HDerivatives out;
  EXPECT_FALSE(detail::h_derivatives_fast(Matrix::identity(3), 0.3, out));
  EXPECT_TRUE(eval_h_derivatives(Matrix::identity(3), 0.3).near_multiple);
}
