// Copyright the numrad authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numbers>
#include <gtest/gtest.h>
#include "numrad/cheb_radius.hpp"
#include "numrad/levelset.hpp"
#include "numrad/random.hpp"

using namespace numrad;

TEST(Chebyshev, CoefficientsOfKnownPolynomial)
{
  // 3 T_0 - T_2 + 0.5 T_3 sampled at 9 Lobatto points.
  std::vector<double> values(9);
  for (int j = 0; j < 9; ++j)
  {
    const double x = std::cos(std::numbers::pi * j / 8.0);
    values[static_cast<std::size_t>(j)] = 3.0 - (2 * x * x - 1) + 0.5 * (4 * x * x * x - 3 * x);
  }
  const std::vector<double> c = detail::chebyshev_coefficients(values);
  const double expected[] = {3.0, 0.0, -1.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0};
  for (int k = 0; k < 9; ++k)
  {
    EXPECT_NEAR(c[static_cast<std::size_t>(k)], expected[k], 1e-15);
  }
  EXPECT_NEAR(detail::clenshaw(c, 0.3), 3.0 - (2 * 0.09 - 1) + 0.5 * (4 * 0.027 - 0.9), 1e-15);
}

TEST(Chebyshev, DerivativeOfT3)
{
  // d/dx T_3 = 12x^2 - 3 = 3 T_0 + 6 T_2.
  const std::vector<double> d = detail::chebyshev_derivative({0.0, 0.0, 0.0, 1.0});
  ASSERT_EQ(d.size(), 3u);
  EXPECT_NEAR(d[0], 3.0, 1e-15);
  EXPECT_NEAR(d[1], 0.0, 1e-15);
  EXPECT_NEAR(d[2], 6.0, 1e-15);
}

TEST(Chebyshev, ColleagueRootsOfT4)
{
  std::vector<double> roots = detail::colleague_roots({0.0, 0.0, 0.0, 0.0, 1.0});
  std::sort(roots.begin(), roots.end());
  ASSERT_EQ(roots.size(), 4u);
  for (int k = 0; k < 4; ++k)
  {
    EXPECT_NEAR(roots[static_cast<std::size_t>(k)],
                std::cos(std::numbers::pi * (7 - 2 * k) / 8.0), 1e-13);
  }
}

TEST(Chebyshev, SubdividedRootFinding)
{
  // cos(20 t) on [0, 2 pi] has 41 critical points including both ends.
  const ChebSeries s = cheb_interpolate([](double t) { return std::cos(20.0 * t); }, 0.0, two_pi);
  EXPECT_GT(s.degree(), 51);
  std::vector<double> roots;
  detail::roots_recursive(detail::chebyshev_derivative(s.coeffs), -1.0, 1.0, 1e-12, 0, roots);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double x, double y) { return std::abs(x - y) < 1e-9; }),
              roots.end());
  EXPECT_GE(roots.size(), 39u);
  EXPECT_LE(roots.size(), 41u);
  for (double x : roots)
  {
    const double t = s.from_unit(x);
    EXPECT_NEAR(std::abs(std::cos(20.0 * t)), 1.0, 1e-10);
  }
}

TEST(Chebyshev, InterpolatesSmoothFunction)
{
  auto f = [](double t) { return std::exp(std::sin(t)); };
  const ChebSeries s = cheb_interpolate(f, 0.0, two_pi);
  EXPECT_LT(s.degree(), 100);
  for (double t : {0.1, 1.7, 3.3, 6.0})
  {
    EXPECT_NEAR(s(t), f(t), 1e-13);
  }
  const ChebMax m = cheb_max(s);
  EXPECT_NEAR(m.value, std::exp(1.0), 1e-13);
  EXPECT_NEAR(m.theta, std::numbers::pi / 2, 1e-6);
  EXPECT_FALSE(m.fallback);
}

TEST(Chebyshev, EndpointMaximum)
{
  const ChebSeries s = cheb_interpolate([](double t) { return t * t; }, -1.0, 2.0);
  const ChebMax m = cheb_max(s);
  EXPECT_NEAR(m.value, 4.0, 1e-13);
  EXPECT_EQ(m.theta, 2.0);
}

TEST(Chebyshev, KinkFailsToConverge)
{
  ChebOptions opts;
  opts.max_points = 1025;
  try
  {
    cheb_interpolate([](double t) { return std::abs(t - 0.1); }, -1.0, 1.0, opts);
    FAIL() << "expected InterpolationError";
  }
  catch (const InterpolationError &e)
  {
    EXPECT_EQ(e.coefficient_profile.size(), 1025u);
  }
}

TEST(Chebyshev, LocateKinkFindsCorner)
{
  long evals = 0;
  const double cut = detail::locate_kink([](double t) { return std::abs(t - 0.3); }, -1.0, 2.0,
                                         evals);
  EXPECT_NEAR(cut, 0.3, 1e-10);
}

TEST(ChebRadius, KnownValues)
{
  EXPECT_NEAR(compute_radius_cheb(Matrix::shift(2)).value, 0.5, 1e-13);
  EXPECT_NEAR(compute_radius_cheb(Matrix::identity(3)).value, 1.0, 1e-13);
  EXPECT_NEAR(compute_radius_cheb(Matrix::shift(4)).value, std::cos(std::numbers::pi / 5), 1e-10);
  EXPECT_EQ(compute_radius_cheb(Matrix::zero(2)).value, 0.0);
}

TEST(ChebRadius, SplitsAtKinks)
{
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1.0;
  const ChebRadiusReport rep = compute_radius_cheb_report(Matrix::from_real(d));
  EXPECT_NEAR(rep.result.value, 1.0, 1e-13);
  EXPECT_GT(rep.pieces.size(), 1u);
  for (std::size_t k = 1; k < rep.pieces.size(); ++k)
  {
    EXPECT_EQ(rep.pieces[k].a, rep.pieces[k - 1].b);
  }
}

TEST(ChebRadius, AgreesWithLso)
{
  for (std::uint64_t seed = 0; seed < 4; ++seed)
  {
    const Matrix a = gen_random_matrix(10, seed % 2 ? Field::Complex : Field::Real, seed);
    const double lso = compute_radius_lso(a).value;
    const RadiusResult cheb = compute_radius_cheb(a);
    EXPECT_LE(std::abs(lso - cheb.value) / lso, 1e-12) << "seed=" << seed;
    EXPECT_NEAR(eval_h_value(a, cheb.theta_star), cheb.value, 1e-12 * lso);
  }
}
