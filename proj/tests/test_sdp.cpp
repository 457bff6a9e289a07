// Copyright the numrad authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <sstream>
#include <gtest/gtest.h>
#include "numrad/levelset.hpp"
#include "numrad/random.hpp"
#include "numrad/sdp.hpp"

using namespace numrad;

TEST(AssembleBlock, IdentityForZeroData)
{
  const HermitianMatrix m = assemble_block_matrix(1.0, HermitianMatrix::zero(2), Matrix::zero(2));
  EXPECT_TRUE(m.entries() == DenseMatrix::Identity(4, 4));
}

TEST(AssembleBlock, DiagonalZ)
{
  DenseMatrix z = DenseMatrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  const HermitianMatrix m = assemble_block_matrix(0.0, HermitianMatrix(z), Matrix::zero(2));
  DenseMatrix expected = DenseMatrix::Zero(4, 4);
  expected.diagonal() << 1.0, -1.0, -1.0, 1.0;
  EXPECT_TRUE(m.entries() == expected);
}

TEST(AssembleBlock, PlacesAAndAdjoint)
{
  const Matrix a = gen_random_matrix(3, Field::Complex, 2);
  const HermitianMatrix m = assemble_block_matrix(0.5, HermitianMatrix::zero(3), a);
  EXPECT_TRUE(m.entries().topRightCorner(3, 3) == a.entries());
  EXPECT_TRUE(m.entries().bottomLeftCorner(3, 3) == a.entries().adjoint());
}

TEST(AssembleBlock, DimensionMismatch)
{
  EXPECT_THROW(assemble_block_matrix(1.0, HermitianMatrix::zero(2), Matrix::zero(3)),
               DimensionError);
}

TEST(InitialPoint, StrictlyFeasible)
{
  const SdpIterate z0 = initial_point(Matrix::zero(3));
  EXPECT_NEAR(z0.c, 1e-8, 1e-20);
  EXPECT_GT(z0.feas_margin, 0.0);

  const SdpIterate j = initial_point(Matrix::shift(2));
  EXPECT_NEAR(j.c, 1.01 + 2e-8, 1e-14);
  EXPECT_NEAR(j.feas_margin, 0.01 + 2e-8, 1e-12);
  EXPECT_EQ(j.gap_bound, 2.0 * 2 / j.t);

  const SdpIterate s = initial_point(Matrix(DenseMatrix(5.0 * DenseMatrix::Identity(2, 2))));
  EXPECT_NEAR(s.c, 5.05, 1e-6);
  EXPECT_GT(s.feas_margin, 0.0);
}

TEST(Certificate, Examples)
{
  const Matrix a = gen_random_matrix(4, Field::Real, 5);
  EXPECT_GT(check_certificate(a, sigma_max(a) + 1.0, HermitianMatrix::zero(4)), 0.0);
  EXPECT_NEAR(check_certificate(Matrix::identity(2), 0.0, HermitianMatrix::zero(2)), -1.0, 1e-15);
}

TEST(Sdp, JordanBlock)
{
  const SdpReport rep = compute_radius_sdp_report(Matrix::shift(2));
  EXPECT_NEAR(rep.result.value, 0.5, 1e-8);
  EXPECT_GE(rep.iterate.feas_margin, -1e-9 * (1.0 + rep.iterate.c));
}

TEST(Sdp, NormalDiagonal)
{
  DenseMatrix d = DenseMatrix::Zero(2, 2);
  d(0, 0) = Complex(0.0, 2.0);
  d(1, 1) = 1.0;
  EXPECT_NEAR(compute_radius_sdp(Matrix(d)).value, 2.0, 1e-7);
}

TEST(Sdp, RealRandomMatchesLso)
{
  const Matrix a = gen_random_matrix(8, Field::Real, 8);
  const SdpReport rep = compute_radius_sdp_report(a);
  const double lso = compute_radius_lso(a).value;
  EXPECT_LE(std::abs(rep.result.value - lso) / lso, 1e-7);
  EXPECT_GE(rep.result.value, lso - 1e-9 * (1.0 + rep.result.value));
  EXPECT_EQ(rep.variables, 8 * 9 / 2 + 1);
  EXPECT_TRUE((rep.iterate.z.entries().imag().array() == 0.0).all());
}

TEST(Sdp, ComplexRandomCertificate)
{
  const Matrix a = gen_random_matrix(6, Field::Complex, 6);
  const SdpReport rep = compute_radius_sdp_report(a);
  EXPECT_EQ(rep.variables, 6 * 6 + 1);
  const double margin = check_certificate(a, rep.iterate.c, rep.iterate.z);
  EXPECT_GE(margin, -1e-9 * (1.0 + rep.iterate.c));
  EXPECT_LE(margin, 1e-6);
  EXPECT_LE(std::abs(rep.result.value - compute_radius_lso(a).value), 1e-8 * (1.0 + rep.result.value));
  EXPECT_EQ(rep.iterate.gap_bound, 2.0 * 6 / rep.iterate.t);
}

TEST(Sdp, ZeroMatrix)
{
  const SdpReport rep = compute_radius_sdp_report(Matrix::zero(3));
  EXPECT_EQ(rep.result.value, 0.0);
  EXPECT_GE(check_certificate(Matrix::zero(3), rep.iterate.c, rep.iterate.z), 0.0);
}

TEST(Sdp, SizeLimit)
{
  SdpOptions opts;
  opts.size_limit = 4;
  EXPECT_THROW(compute_radius_sdp(Matrix::identity(5), opts), SizeLimitError);
}

TEST(Sdp, IterationCap)
{
  SdpOptions opts;
  opts.max_newton = 3;
  try
  {
    compute_radius_sdp(gen_random_matrix(4, Field::Real, 1), opts);
    FAIL() << "expected IterationLimitError";
  }
  catch (const IterationLimitError &e)
  {
    EXPECT_EQ(e.iterations, 3);
    EXPECT_GT(e.bound, 0.0);
  }
}

TEST(Sdp, TraceHasMonotoneGap)
{
  std::ostringstream trace;
  SdpOptions opts;
  opts.trace = &trace;
  compute_radius_sdp(gen_random_matrix(3, Field::Complex, 2), opts);
  std::istringstream in(trace.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,c,decrement,gap_bound");
  int rows = 0;
  double last_gap = std::numeric_limits<double>::infinity();
  while (std::getline(in, line))
  {
    const double gap = std::stod(line.substr(line.rfind(',') + 1));
    EXPECT_LE(gap, last_gap);
    last_gap = gap;
    ++rows;
  }
  EXPECT_GT(rows, 5);
}
