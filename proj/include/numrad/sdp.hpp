// Copyright the numrad authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <type_traits>
#include <vector>
#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include "numrad/error.hpp"
#include "numrad/matrix.hpp"
#include "numrad/parallel.hpp"
#include "numrad/result.hpp"
#include "numrad/spectral.hpp"

// r(A) = min c subject to [[cI + Z, A], [A^*, cI - Z]] >= 0 over real c and
// Hermitian Z (real symmetric Z suffices for real A), solved by a log-det
// barrier path-following method with damped Newton centering.

namespace numrad
{

struct SdpOptions
{
  double tol = 1e-8;
  int max_newton = 500;
  Index size_limit = 50;
  double decrement_tol = 1e-8;  // on lambda^2 / 2
  int max_halvings = 60;
  double t_factor = 10.0;
  // When set, one CSV row per Newton step: t,c,decrement,gap_bound.
  std::ostream *trace = nullptr;
};

struct SdpIterate
{
  double c = 0.0;
  HermitianMatrix z;
  double t = 0.0;
  double feas_margin = 0.0;  // lambda_min of the block matrix
  double gap_bound = 0.0;    // 2n / t
};

struct SdpReport
{
  RadiusResult result;
  SdpIterate iterate;
  int newton_steps = 0;
  int outer_steps = 0;
  long variables = 0;  // including c
};

/// [[cI + Z, A], [A^*, cI - Z]].
inline HermitianMatrix assemble_block_matrix(double c, const HermitianMatrix &z, const Matrix &a)
{
  const Index n = a.n();
  if (z.size() != n)
  {
    throw DimensionError("Z is " + std::to_string(z.size()) + "x" + std::to_string(z.size()) +
                         " but A is " + std::to_string(n) + "x" + std::to_string(n));
  }
  DenseMatrix m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = z.entries();
  m.topLeftCorner(n, n).diagonal().array() += c;
  m.bottomRightCorner(n, n) = -z.entries();
  m.bottomRightCorner(n, n).diagonal().array() += c;
  m.topRightCorner(n, n) = a.entries();
  m.bottomLeftCorner(n, n) = a.entries().adjoint();
  return HermitianMatrix(m);
}

/// lambda_min of the block matrix. A nonnegative value certifies c >= r(A).
inline double check_certificate(const Matrix &a, double c, const HermitianMatrix &z)
{
  return lambda_min(assemble_block_matrix(c, z, a));
}

inline SdpIterate initial_point(const Matrix &a)
{
  const double sigma = sigma_max(a);
  SdpIterate it;
  it.c = sigma * (1.0 + 1e-2) + 1e-8 * (1.0 + sigma);
  it.z = HermitianMatrix::zero(a.n());
  it.t = 1.0 / (1.0 + sigma);
  it.feas_margin = check_certificate(a, it.c, it.z);
  it.gap_bound = 2.0 * static_cast<double>(a.n()) / it.t;
  return it;
}

namespace detail
{

struct BasisTerm
{
  Index row = 0;
  Index col = 0;
  Complex coeff;
};

// Orthonormal basis of the Hermitian (or real symmetric) n x n matrices:
// e_i e_i^T, (e_i e_j^T + e_j e_i^T)/sqrt2 and i (e_i e_j^T - e_j e_i^T)/sqrt2.
struct HermitianBasis
{
  std::vector<std::array<BasisTerm, 2>> terms;
  std::vector<int> sizes;

  HermitianBasis(Index n, bool real)
  {
    const double r = 1.0 / std::sqrt(2.0);
    for (Index i = 0; i < n; ++i)
    {
      terms.push_back({BasisTerm{i, i, 1.0}, BasisTerm{}});
      sizes.push_back(1);
    }
    for (Index i = 0; i < n; ++i)
    {
      for (Index j = i + 1; j < n; ++j)
      {
        terms.push_back({BasisTerm{i, j, r}, BasisTerm{j, i, r}});
        sizes.push_back(2);
      }
    }
    if (!real)
    {
      for (Index i = 0; i < n; ++i)
      {
        for (Index j = i + 1; j < n; ++j)
        {
          terms.push_back({BasisTerm{i, j, Complex(0.0, r)}, BasisTerm{j, i, Complex(0.0, -r)}});
          sizes.push_back(2);
        }
      }
    }
  }

  Index size() const { return static_cast<Index>(terms.size()); }
};

template <class Scalar>
Scalar basis_coeff(Complex c)
{
  if constexpr (std::is_same_v<Scalar, double>)
  {
    return c.real();
  }
  else
  {
    return c;
  }
}

inline double real_part(double x) { return x; }
inline double real_part(Complex x) { return x.real(); }

template <class Scalar>
class SdpSolver
{
public:
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  SdpSolver(const Matrix &a, bool real) : n_(a.n()), basis_(a.n(), real)
  {
    if constexpr (std::is_same_v<Scalar, double>)
    {
      a_ = a.entries().real();
    }
    else
    {
      a_ = a.entries();
    }
  }

  Index variables() const { return basis_.size() + 1; }

  Mat z_matrix(const Eigen::VectorXd &x) const
  {
    Mat z = Mat::Zero(n_, n_);
    for (Index k = 0; k < basis_.size(); ++k)
    {
      const auto &t = basis_.terms[static_cast<std::size_t>(k)];
      for (int p = 0; p < basis_.sizes[static_cast<std::size_t>(k)]; ++p)
      {
        z(t[p].row, t[p].col) += x(k + 1) * basis_coeff<Scalar>(t[p].coeff);
      }
    }
    return z;
  }

  Mat block(const Eigen::VectorXd &x) const
  {
    const Mat z = z_matrix(x);
    Mat m(2 * n_, 2 * n_);
    m.topLeftCorner(n_, n_) = z;
    m.topLeftCorner(n_, n_).diagonal().array() += x(0);
    m.bottomRightCorner(n_, n_) = -z;
    m.bottomRightCorner(n_, n_).diagonal().array() += x(0);
    m.topRightCorner(n_, n_) = a_;
    m.bottomLeftCorner(n_, n_) = a_.adjoint();
    return m;
  }

  // t c - log det M, or +inf when M is not positive definite.
  double barrier(const Eigen::VectorXd &x, double t, Eigen::LLT<Mat> &llt) const
  {
    llt.compute(block(x));
    if (llt.info() != Eigen::Success)
    {
      return std::numeric_limits<double>::infinity();
    }
    double log_det = 0.0;
    const auto &l = llt.matrixLLT();
    for (Index i = 0; i < l.rows(); ++i)
    {
      const double d = real_part(l(i, i));
      if (!(d > 0.0) || !std::isfinite(d))
      {
        return std::numeric_limits<double>::infinity();
      }
      log_det += 2.0 * std::log(d);
    }
    return t * x(0) - log_det;
  }

  // Gradient and Hessian of the barrier at a strictly feasible x, given the
  // Cholesky factor of M(x).
  void derivatives(const Eigen::LLT<Mat> &llt, double t, Eigen::VectorXd &g,
                   Eigen::MatrixXd &h) const
  {
    Mat w = llt.solve(Mat::Identity(2 * n_, 2 * n_));
    w = (0.5 * (w + w.adjoint())).eval();
    const Mat p = w.topLeftCorner(n_, n_);
    const Mat q = w.topRightCorner(n_, n_);
    const Mat qh = q.adjoint();
    const Mat r = w.bottomRightCorner(n_, n_);
    const Mat pr = p - r;
    const Mat w2 = w * w;
    const Mat d2 = w2.topLeftCorner(n_, n_) - w2.bottomRightCorner(n_, n_);

    const Index m = variables();
    g.resize(m);
    h.resize(m, m);
    g(0) = t - real_part(w.trace());
    h(0, 0) = w.squaredNorm();
    // tr(X E) = sum over terms of coeff * X(col, row).
    auto pair_trace = [&](const Mat &x, Index k)
    {
      const auto &terms = basis_.terms[static_cast<std::size_t>(k)];
      Scalar sum(0);
      for (int p = 0; p < basis_.sizes[static_cast<std::size_t>(k)]; ++p)
      {
        sum += basis_coeff<Scalar>(terms[p].coeff) * x(terms[p].col, terms[p].row);
      }
      return real_part(sum);
    };
    for (Index k = 0; k < basis_.size(); ++k)
    {
      g(k + 1) = -pair_trace(pr, k);
      h(0, k + 1) = pair_trace(d2, k);
      h(k + 1, 0) = h(0, k + 1);
    }

    // tr(X e_a e_b^T Y e_c e_d^T) = X(d, a) Y(b, c), summed over
    // (P, P), (R, R), -(Q, Q^*), -(Q^*, Q).
    parallel_for(0, basis_.size(), [&](std::ptrdiff_t j)
                 {
                   const auto &tj = basis_.terms[static_cast<std::size_t>(j)];
                   const int sj = basis_.sizes[static_cast<std::size_t>(j)];
                   for (Index k = j; k < basis_.size(); ++k)
                   {
                     const auto &tk = basis_.terms[static_cast<std::size_t>(k)];
                     const int sk = basis_.sizes[static_cast<std::size_t>(k)];
                     Scalar sum(0);
                     for (int u = 0; u < sj; ++u)
                     {
                       const Index a = tj[u].row;
                       const Index b = tj[u].col;
                       const Scalar cu = basis_coeff<Scalar>(tj[u].coeff);
                       for (int v = 0; v < sk; ++v)
                       {
                         const Index c = tk[v].row;
                         const Index d = tk[v].col;
                         const Scalar term = p(d, a) * p(b, c) + r(d, a) * r(b, c) -
                                             q(d, a) * qh(b, c) - qh(d, a) * q(b, c);
                         sum += cu * basis_coeff<Scalar>(tk[v].coeff) * term;
                       }
                     }
                     h(j + 1, k + 1) = real_part(sum);
                     h(k + 1, j + 1) = real_part(sum);
                   }
                 });
  }

  SdpReport solve(const Matrix &a, const SdpOptions &opts) const
  {
    detail::Stopwatch clock;
    SdpReport report;
    report.variables = static_cast<long>(variables());
    report.result.method = Method::SDP;

    const SdpIterate start = initial_point(a);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(variables());
    x(0) = start.c;
    double t = start.t;
    const double two_n = 2.0 * static_cast<double>(n_);

    if (opts.trace != nullptr)
    {
      *opts.trace << "t,c,decrement,gap_bound\n";
      *opts.trace << std::setprecision(17);
    }

    Eigen::LLT<Mat> llt;
    double f = barrier(x, t, llt);
    if (!std::isfinite(f))
    {
      throw Error("SDP initial point is not strictly feasible");
    }
    Eigen::VectorXd g;
    Eigen::MatrixXd h;
    Eigen::LLT<Mat> trial_llt;
    while (true)
    {
      // Centering at the current t.
      while (true)
      {
        if (report.newton_steps >= opts.max_newton)
        {
          throw IterationLimitError("SDP barrier method reached " +
                                        std::to_string(opts.max_newton) + " Newton steps",
                                    x(0), report.newton_steps, two_n / t);
        }
        derivatives(llt, t, g, h);
        Eigen::LLT<Eigen::MatrixXd> hfac(h);
        Eigen::VectorXd step;
        if (hfac.info() == Eigen::Success)
        {
          step = -hfac.solve(g);
        }
        else
        {
          step = -h.ldlt().solve(g);
        }
        const double slope = g.dot(step);
        const double decrement2 = -slope;
        ++report.newton_steps;
        if (opts.trace != nullptr)
        {
          *opts.trace << t << ',' << x(0) << ',' << std::sqrt(std::max(decrement2, 0.0)) << ','
                      << two_n / t << '\n';
        }
        if (!(decrement2 > 0.0) || 0.5 * decrement2 <= opts.decrement_tol)
        {
          break;
        }
        double s = 1.0;
        bool accepted = false;
        for (int halving = 0; halving <= opts.max_halvings; ++halving)
        {
          const Eigen::VectorXd trial = x + s * step;
          const double ft = barrier(trial, t, trial_llt);
          if (std::isfinite(ft) && ft <= f + 0.25 * s * slope)
          {
            x = trial;
            f = ft;
            std::swap(llt, trial_llt);
            accepted = true;
            break;
          }
          s *= 0.5;
        }
        if (!accepted)
        {
          // No further progress is representable at this t.
          report.result.degenerate = true;
          break;
        }
      }
      ++report.outer_steps;
      if (two_n / t <= opts.tol * (1.0 + std::abs(x(0))))
      {
        break;
      }
      t *= opts.t_factor;
      f = barrier(x, t, llt);
    }

    const Mat z = z_matrix(x);
    SdpIterate &out = report.iterate;
    out.c = x(0);
    if constexpr (std::is_same_v<Scalar, double>)
    {
      out.z = HermitianMatrix(DenseMatrix(z.template cast<Complex>()));
    }
    else
    {
      out.z = HermitianMatrix(DenseMatrix(z));
    }
    out.t = t;
    out.gap_bound = two_n / t;
    out.feas_margin = check_certificate(a, out.c, out.z);

    report.result.value = out.c;
    report.result.iterations = report.newton_steps;
    report.result.wall_seconds = clock.seconds();
    return report;
  }

private:
  Index n_;
  HermitianBasis basis_;
  Mat a_;
};

}  // namespace detail

inline SdpReport compute_radius_sdp_report(const Matrix &a, const SdpOptions &opts = {})
{
  if (a.n() > opts.size_limit)
  {
    throw SizeLimitError("SDP solver supports n <= " + std::to_string(opts.size_limit) +
                             ", got n = " + std::to_string(a.n()),
                         a.n(), opts.size_limit);
  }
  if (!(opts.tol > 0.0))
  {
    throw Error("SDP tolerance must be positive");
  }
  if (a.entries().isZero(0.0))
  {
    SdpReport report;
    report.result.method = Method::SDP;
    report.iterate.z = HermitianMatrix::zero(a.n());
    report.iterate.t = std::numeric_limits<double>::infinity();
    report.variables = a.is_real() ? a.n() * (a.n() + 1) / 2 + 1 : a.n() * a.n() + 1;
    return report;
  }
  if (a.is_real())
  {
    return detail::SdpSolver<double>(a, true).solve(a, opts);
  }
  return detail::SdpSolver<Complex>(a, false).solve(a, opts);
}

inline RadiusResult compute_radius_sdp(const Matrix &a, const SdpOptions &opts = {})
{
  return compute_radius_sdp_report(a, opts).result;
}

inline RadiusResult compute_radius_sdp(const Matrix &a, double tol)
{
  SdpOptions opts;
  opts.tol = tol;
  return compute_radius_sdp(a, opts);
}

}  // namespace numrad
