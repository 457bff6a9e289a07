// Copyright the numrad authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <gtest/gtest.h>
#include "numrad/oracle_grid.hpp"
#include "numrad/random.hpp"

using namespace numrad;

TEST(OracleGrid, JordanBlock)
{
  EXPECT_NEAR(compute_radius_grid(Matrix::shift(2)).value, 0.5, 1e-14);
}

TEST(OracleGrid, IdentityPeaksAtZero)
{
  const RadiusResult r = compute_radius_grid(Matrix::identity(2));
  EXPECT_NEAR(r.value, 1.0, 1e-14);
  EXPECT_NEAR(std::min(r.theta_star, two_pi - r.theta_star), 0.0, 1e-6);
  EXPECT_EQ(r.method, Method::GRID);
}

TEST(OracleGrid, ShiftFive)
{
  EXPECT_NEAR(compute_radius_grid(Matrix::shift(5)).value, std::sqrt(3.0) / 2.0, 1e-13);
}

TEST(OracleGrid, GoldenSectionFindsParabolaVertex)
{
  long evals = 0;
  const auto [x, v] = golden_section_max([](double t) { return -(t - 0.3) * (t - 0.3); }, 0.0,
                                         1.0, 1e-12, evals);
  EXPECT_NEAR(x, 0.3, 1e-6);
  EXPECT_NEAR(v, 0.0, 1e-12);
  EXPECT_GT(evals, 10);
}

TEST(OracleGrid, SandwichBounds)
{
  GridOptions opts;
  opts.num_points = 20000;
  for (std::uint64_t seed = 0; seed < 6; ++seed)
  {
    const Matrix a = gen_random_matrix(5, seed % 2 ? Field::Complex : Field::Real, seed);
    const double r = compute_radius_grid(a, opts).value;
    const double lower = std::max(spectral_radius(a), sigma_max(a) / 2.0);
    EXPECT_GE(r, lower - 1e-12);
    EXPECT_LE(r, sigma_max(a) * (1.0 + 1e-15));
  }
}

TEST(OracleGrid, Deterministic)
{
  const Matrix a = gen_random_matrix(4, Field::Complex, 9);
  GridOptions opts;
  opts.num_points = 5000;
  const RadiusResult r1 = compute_radius_grid(a, opts);
  const RadiusResult r2 = compute_radius_grid(a, opts);
  EXPECT_EQ(r1.value, r2.value);
  EXPECT_EQ(r1.theta_star, r2.theta_star);
}

TEST(OracleGrid, ZeroMatrix)
{
  EXPECT_EQ(compute_radius_grid(Matrix::zero(3)).value, 0.0);
}
