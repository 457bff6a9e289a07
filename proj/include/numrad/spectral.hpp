// Copyright the numrad authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>
#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include "numrad/matrix.hpp"

// The one-parameter Hermitian family
//
//   H(theta) = (e^{i theta} A + e^{-i theta} A^*) / 2,
//
// whose largest eigenvalue h(theta) is the support function of the field of
// values of A in direction theta. The numerical radius is max_theta h(theta).

namespace numrad
{

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Relative eigenvalue gap below which lambda_max is treated as multiple.
inline constexpr double multiple_gap_tolerance = 1e-10;

/// Maps an angle to [0, 2 pi).
inline double wrap_angle(double theta)
{
  double t = std::fmod(theta, two_pi);
  if (t < 0.0)
  {
    t += two_pi;
  }
  if (t >= two_pi)
  {
    t = 0.0;
  }
  return t;
}

namespace detail
{

// (e^{i theta} A)/2 + its adjoint, written so that the result is exactly
// Hermitian in floating point.
inline DenseMatrix h_matrix_entries(const Matrix &a, double theta)
{
  const Index n = a.n();
  const Complex rot = 0.5 * std::polar(1.0, theta);
  const DenseMatrix &e = a.entries();
  DenseMatrix h(n, n);
  for (Index j = 0; j < n; ++j)
  {
    h(j, j) = Complex(2.0 * (rot * e(j, j)).real(), 0.0);
    for (Index i = j + 1; i < n; ++i)
    {
      const Complex v = rot * e(i, j) + std::conj(rot * e(j, i));
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return h;
}

// dH/dtheta = (i e^{i theta} A - i e^{-i theta} A^*)/2.
inline DenseMatrix h_derivative_entries(const Matrix &a, double theta)
{
  const Complex rot = Complex(0.0, 0.5) * std::polar(1.0, theta);
  const DenseMatrix b = rot * a.entries();
  return b + b.adjoint();
}

// First component with modulus above this is rotated onto the positive reals.
inline constexpr double sign_convention_threshold = 1e-12;

inline void normalize_phase(DenseVector &v)
{
  for (Index i = 0; i < v.size(); ++i)
  {
    const double mag = std::abs(v(i));
    if (mag > sign_convention_threshold)
    {
      v *= std::conj(v(i)) / mag;
      v(i) = Complex(mag, 0.0);
      return;
    }
  }
}

// Largest eigenvalue of the symmetric tridiagonal with diagonal d and squared
// off-diagonals e2. Newton's method on det(T - xI) started above the
// Gershgorin bound decreases monotonically onto the largest root; each step is
// one LDL^T pivot recurrence.
inline double tridiagonal_lambda_max(const double *d, const double *e2, Index n)
{
  double hi = -std::numeric_limits<double>::infinity();
  double scale = 0.0;
  bool diagonal = true;
  for (Index i = 0; i < n; ++i)
  {
    if (!std::isfinite(d[i]) || (i + 1 < n && !std::isfinite(e2[i])))
    {
      return std::numeric_limits<double>::quiet_NaN();
    }
    const double r = (i > 0 ? std::sqrt(e2[i - 1]) : 0.0) + (i + 1 < n ? std::sqrt(e2[i]) : 0.0);
    hi = std::max(hi, d[i] + r);
    scale = std::max(scale, std::abs(d[i]) + r);
    diagonal = diagonal && (i + 1 == n || e2[i] == 0.0);
  }
  if (diagonal)
  {
    return *std::max_element(d, d + n);
  }
  const double eps = std::numeric_limits<double>::epsilon();
  const double pivmin = std::numeric_limits<double>::min() / eps * std::max(1.0, scale * scale);
  double x = hi + eps * scale;
  for (int it = 0; it < 400; ++it)
  {
    // q_i are the pivots of T - xI, dq_i their x-derivatives; ratio = f'/f.
    double q = d[0] - x;
    double dq = -1.0;
    if (std::abs(q) < pivmin)
    {
      q = -pivmin;
    }
    double ratio = dq / q;
    for (Index i = 1; i < n; ++i)
    {
      const double t = e2[i - 1] / q;
      dq = -1.0 + t * dq / q;
      q = d[i] - x - t;
      if (std::abs(q) < pivmin)
      {
        q = -pivmin;
      }
      ratio += dq / q;
    }
    const double next = x - 1.0 / ratio;
    if (!(next < x))
    {
      break;
    }
    const bool done = x - next <= 2.0 * eps * std::max(std::abs(x), scale);
    x = next;
    if (done)
    {
      break;
    }
  }
  return x;
}

// Number of eigenvalues of the tridiagonal (d, e2) below x: the count of
// negative pivots of T - xI.
inline Index count_below(const double *d, const double *e2, Index n, double x, double pivmin)
{
  Index count = 0;
  double q = d[0] - x;
  for (Index i = 0;;)
  {
    if (std::abs(q) < pivmin)
    {
      q = -pivmin;
    }
    count += q < 0.0 ? 1 : 0;
    if (++i == n)
    {
      return count;
    }
    q = d[i] - x - e2[i - 1] / q;
  }
}

// Householder reduction H = Q D T D^* Q^* of a Hermitian matrix with T real
// symmetric tridiagonal and D diagonal unitary.
struct Tridiagonal
{
  Index n = 0;
  std::vector<double> d;       // diagonal of T
  std::vector<double> e2;      // squared off-diagonals of T
  std::vector<Complex> phase;  // diagonal of D
  std::vector<double> tau;     // reflector k is I - tau_k u u^*, u stored below h(k, k)
};

// Explicit products avoid the library's inf/nan-aware complex multiply.
inline Complex mul(Complex a, Complex b)
{
  return Complex(a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real());
}

// conj(a) * b
inline Complex conj_mul(Complex a, Complex b)
{
  return Complex(a.real() * b.real() + a.imag() * b.imag(), a.real() * b.imag() - a.imag() * b.real());
}

// Reduces h, given by its lower triangle; the reflectors overwrite the part
// below the subdiagonal.
inline void tridiagonalize(DenseMatrix &h, Tridiagonal &t)
{
  const Index n = h.rows();
  const auto n_ = static_cast<std::size_t>(n);
  thread_local std::vector<Complex> w;
  t.n = n;
  t.d.assign(n_, 0.0);
  t.e2.assign(n_, 0.0);
  t.phase.assign(n_, Complex(1.0));
  t.tau.assign(n_, 0.0);
  w.resize(n_);
  auto link = [&](Index k, Complex beta)
  {
    const double mag = std::abs(beta);
    t.phase[static_cast<std::size_t>(k + 1)] =
        mag == 0.0 ? t.phase[static_cast<std::size_t>(k)] : mul(t.phase[static_cast<std::size_t>(k)], beta / mag);
  };
  for (Index k = 0; k + 2 < n; ++k)
  {
    const auto k_ = static_cast<std::size_t>(k);
    t.d[k_] = h(k, k).real();
    const Index m = n - k - 1;
    Complex *u = &h(k + 1, k);
    double norm2 = 0.0;
    for (Index i = 0; i < m; ++i)
    {
      norm2 += std::norm(u[i]);
    }
    t.e2[k_] = norm2;
    const double head2 = std::norm(u[0]);
    if (norm2 - head2 == 0.0)
    {
      link(k, u[0]);
      continue;
    }
    // u = x + phase |x| e1 maps x to -phase |x| e1.
    const double head = std::sqrt(head2);
    const Complex phase = head == 0.0 ? Complex(1.0) : u[0] / head;
    const double alpha = std::sqrt(norm2);
    link(k, -phase * alpha);
    u[0] += phase * alpha;
    double uu = 0.0;
    for (Index i = 0; i < m; ++i)
    {
      uu += std::norm(u[i]);
    }
    const double tau = 2.0 / uu;
    t.tau[k_] = tau;
    // w = tau A22 u, A22 read from its lower triangle.
    std::fill(w.begin(), w.begin() + m, Complex(0.0));
    for (Index j = 0; j < m; ++j)
    {
      const Complex *aj = &h(k + 1, k + 1 + j);
      const Complex uj = u[j];
      Complex acc = aj[j].real() * uj;
      for (Index i = j + 1; i < m; ++i)
      {
        w[static_cast<std::size_t>(i)] += mul(aj[i], uj);
        acc += conj_mul(aj[i], u[i]);
      }
      w[static_cast<std::size_t>(j)] += acc;
    }
    Complex uw(0.0);
    for (Index i = 0; i < m; ++i)
    {
      w[static_cast<std::size_t>(i)] *= tau;
      uw += conj_mul(u[i], w[static_cast<std::size_t>(i)]);
    }
    const Complex half = 0.5 * tau * uw;
    for (Index i = 0; i < m; ++i)
    {
      w[static_cast<std::size_t>(i)] -= mul(half, u[i]);
    }
    // A22 -= u w^* + w u^* on the lower triangle.
    for (Index j = 0; j < m; ++j)
    {
      Complex *aj = &h(k + 1, k + 1 + j);
      const Complex uj = std::conj(u[j]);
      const Complex wj = std::conj(w[static_cast<std::size_t>(j)]);
      for (Index i = j; i < m; ++i)
      {
        aj[i] -= mul(u[i], wj) + mul(w[static_cast<std::size_t>(i)], uj);
      }
    }
  }
  if (n >= 2)
  {
    t.d[n_ - 2] = h(n - 2, n - 2).real();
    t.e2[n_ - 2] = std::norm(h(n - 1, n - 2));
    link(n - 2, h(n - 1, n - 2));
  }
  t.d[n_ - 1] = h(n - 1, n - 1).real();
}

// z <- Q z (adjoint = false) or Q^* z, with the reflectors held in h.
inline void apply_reflectors(const DenseMatrix &h, const Tridiagonal &t, DenseVector &z, bool adjoint)
{
  const Index n = t.n;
  for (Index step = 0; step + 2 < n; ++step)
  {
    const Index k = adjoint ? step : n - 3 - step;
    const double tau = t.tau[static_cast<std::size_t>(k)];
    if (tau == 0.0)
    {
      continue;
    }
    const Complex *u = &h(k + 1, k);
    Complex *zk = z.data() + k + 1;
    Complex dot(0.0);
    for (Index i = 0; i + k + 1 < n; ++i)
    {
      dot += conj_mul(u[i], zk[i]);
    }
    dot *= tau;
    for (Index i = 0; i + k + 1 < n; ++i)
    {
      zk[i] -= mul(u[i], dot);
    }
  }
}

// Pivots of the LDL^T factorization of sigma I - T; false unless all positive.
inline bool shifted_pivots(const Tridiagonal &t, double sigma, std::vector<double> &pivots)
{
  pivots.resize(static_cast<std::size_t>(t.n));
  double p = sigma - t.d[0];
  for (Index i = 0;;)
  {
    if (!(p > 0.0))
    {
      return false;
    }
    pivots[static_cast<std::size_t>(i)] = p;
    if (++i == t.n)
    {
      return true;
    }
    p = sigma - t.d[static_cast<std::size_t>(i)] - t.e2[static_cast<std::size_t>(i - 1)] / p;
  }
}

// Solves (sigma I - T) x = b in place from the pivots of shifted_pivots.
template <typename Vec>
void shifted_solve(const Tridiagonal &t, const std::vector<double> &pivots, Vec &b)
{
  const Index n = t.n;
  for (Index i = 1; i < n; ++i)
  {
    const auto i_ = static_cast<std::size_t>(i);
    b[i] += (std::sqrt(t.e2[i_ - 1]) / pivots[i_ - 1]) * b[i - 1];
  }
  b[n - 1] /= pivots[static_cast<std::size_t>(n - 1)];
  for (Index i = n - 2; i >= 0; --i)
  {
    const auto i_ = static_cast<std::size_t>(i);
    b[i] = (b[i] + std::sqrt(t.e2[i_]) * b[i + 1]) / pivots[i_];
  }
}

// lambda_max of a Hermitian matrix given by its lower triangle (overwritten).
inline double hermitian_lambda_max(DenseMatrix &h)
{
  thread_local Tridiagonal t;
  tridiagonalize(h, t);
  return tridiagonal_lambda_max(t.d.data(), t.e2.data(), h.rows());
}

}  // namespace detail

inline HermitianMatrix build_h_matrix(const Matrix &a, double theta)
{
  return HermitianMatrix(detail::h_matrix_entries(a, theta));
}

/// lambda_max(H(theta)) only; cheaper than eval_h.
inline double eval_h_value(const Matrix &a, double theta)
{
  if (a.n() == 1)
  {
    return (std::polar(1.0, theta) * a(0, 0)).real();
  }
  DenseMatrix h = detail::h_matrix_entries(a, theta);
  const double value = detail::hermitian_lambda_max(h);
  if (!std::isfinite(value))
  {
    throw EigensolverError("Hermitian eigensolver failed in eval_h", theta, a.n());
  }
  return value;
}

/// Largest eigenpair of H(theta). The eigenvector is normalized so that its
/// first nonzero component is real and positive.
inline EigPair eval_h(const Matrix &a, double theta)
{
  const Index n = a.n();
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(detail::h_matrix_entries(a, theta));
  if (es.info() != Eigen::Success)
  {
    throw EigensolverError("Hermitian eigensolver failed in eval_h", theta, n);
  }
  EigPair out;
  out.value = es.eigenvalues()(n - 1);
  out.vector = es.eigenvectors().col(n - 1);
  detail::normalize_phase(out.vector);
  out.gap = n > 1 ? out.value - es.eigenvalues()(n - 2) : std::numeric_limits<double>::infinity();
  const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
  out.near_multiple = out.gap < multiple_gap_tolerance * scale;
  return out;
}

/// v^* H'(theta) v. Equals h'(theta) when v spans the eigenspace of a simple
/// lambda_max; at a multiple lambda_max the value depends on v.
inline double eval_h_derivative(const Matrix &a, double theta, const DenseVector &v)
{
  // v^* H' v = Re(i e^{i theta} v^* A v) = -Im(e^{i theta} v^* A v)
  const Complex rayleigh = v.dot(a.entries() * v);
  return -(std::polar(1.0, theta) * rayleigh).imag();
}

/// h and its first two derivatives at theta.
struct HDerivatives
{
  double theta = 0.0;
  double value = 0.0;
  double first = 0.0;
  double second = 0.0;
  double gap = 0.0;
  bool near_multiple = false;
};

namespace detail
{

// Full eigendecomposition of H(theta); n >= 2.
inline HDerivatives h_derivatives_dense(const Matrix &a, double theta)
{
  const Index n = a.n();
  HDerivatives out;
  out.theta = theta;
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h_matrix_entries(a, theta));
  if (es.info() != Eigen::Success)
  {
    throw EigensolverError("Hermitian eigensolver failed in eval_h_derivatives", theta, n);
  }
  const auto &lambda = es.eigenvalues();
  const auto &vecs = es.eigenvectors();
  const double top = lambda(n - 1);
  const double scale = lambda.cwiseAbs().maxCoeff();
  out.value = top;
  out.gap = top - lambda(n - 2);
  out.near_multiple = out.gap < multiple_gap_tolerance * scale;

  const DenseVector v = vecs.col(n - 1);
  out.first = eval_h_derivative(a, theta, v);

  // Second-order perturbation: v^* H'' v + 2 sum_k |u_k^* H' v|^2 / (top - lambda_k),
  // with H'' = -H. Terms inside the top cluster are skipped.
  const DenseVector hv = h_derivative_entries(a, theta) * v;
  double curvature = -top;
  for (Index k = 0; k + 1 < n; ++k)
  {
    const double denom = top - lambda(k);
    if (denom > multiple_gap_tolerance * scale)
    {
      curvature += 2.0 * std::norm(vecs.col(k).dot(hv)) / denom;
    }
  }
  out.second = curvature;
  return out;
}

// Same quantities from the tridiagonal form alone: lambda_max and lambda_2 by
// Newton and bisection on T, the top eigenvector by inverse iteration on
// sigma I - T (sigma just above lambda_max) mapped back through Q D, and the
// curvature sum as 2 w^* (sigma I - H)^{-1} w with w = H' v projected off v.
// Returns false when lambda_max is near-multiple or the iteration does not
// reach rounding level; the dense path handles those.
inline bool h_derivatives_fast(const Matrix &a, double theta, HDerivatives &out)
{
  const Index n = a.n();
  const auto n_ = static_cast<std::size_t>(n);
  const double eps = std::numeric_limits<double>::epsilon();
  DenseMatrix h = h_matrix_entries(a, theta);
  thread_local Tridiagonal t;
  thread_local std::vector<double> negated, pivots, y, r;
  tridiagonalize(h, t);
  const double *d = t.d.data();
  const double *e2 = t.e2.data();
  const double top = tridiagonal_lambda_max(d, e2, n);
  negated.resize(n_);
  std::transform(t.d.begin(), t.d.end(), negated.begin(), [](double x) { return -x; });
  const double bottom = -tridiagonal_lambda_max(negated.data(), e2, n);
  if (!std::isfinite(top) || !std::isfinite(bottom))
  {
    return false;
  }
  const double scale = std::max(std::abs(top), std::abs(bottom));
  const double pivmin = std::numeric_limits<double>::min() / eps * std::max(1.0, scale * scale);
  const double cut = top - multiple_gap_tolerance * scale;
  if (scale == 0.0 || count_below(d, e2, n, cut, pivmin) != n - 1)
  {
    return false;
  }
  // lambda_2 is where the count below x reaches n - 1.
  double lo = bottom - eps * scale - pivmin;
  double hi = cut;
  for (int k = 0; k < 200 && hi - lo > 2.0 * eps * std::max(std::abs(lo), std::abs(hi)) + pivmin; ++k)
  {
    const double mid = 0.5 * (lo + hi);
    (count_below(d, e2, n, mid, pivmin) >= n - 1 ? hi : lo) = mid;
  }

  if (!shifted_pivots(t, top + 64.0 * static_cast<double>(n) * eps * scale, pivots))
  {
    return false;
  }
  y.resize(n_);
  r.resize(n_);
  for (std::size_t i = 0; i < n_; ++i)
  {
    y[i] = 1.0 + static_cast<double>(i) / static_cast<double>(n);
  }
  const double floor = 8.0 * static_cast<double>(n) * eps * scale;
  bool settled = false;
  for (int k = 0; k < 6 && !settled; ++k)
  {
    shifted_solve(t, pivots, y);
    double norm2 = 0.0;
    for (double x : y)
    {
      norm2 += x * x;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    double res2 = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
    {
      y[i] *= inv;
    }
    for (std::size_t i = 0; i < n_; ++i)
    {
      double ty = (d[i] - top) * y[i];
      ty += i > 0 ? std::sqrt(e2[i - 1]) * y[i - 1] : 0.0;
      ty += i + 1 < n_ ? std::sqrt(e2[i]) * y[i + 1] : 0.0;
      res2 += ty * ty;
    }
    settled = std::sqrt(res2) <= floor;
  }
  if (!settled)
  {
    return false;
  }

  DenseVector v(n);
  for (std::size_t i = 0; i < n_; ++i)
  {
    v(static_cast<Index>(i)) = t.phase[i] * y[i];
  }
  apply_reflectors(h, t, v, false);
  v.normalize();

  out.theta = theta;
  out.value = top;
  out.gap = top - hi;
  out.near_multiple = false;
  out.first = eval_h_derivative(a, theta, v);
  DenseVector w = h_derivative_entries(a, theta) * v;
  w -= v * v.dot(w);
  DenseVector z = w;
  apply_reflectors(h, t, z, true);
  for (std::size_t i = 0; i < n_; ++i)
  {
    z(static_cast<Index>(i)) *= std::conj(t.phase[i]);
  }
  shifted_solve(t, pivots, z);
  for (std::size_t i = 0; i < n_; ++i)
  {
    z(static_cast<Index>(i)) *= t.phase[i];
  }
  apply_reflectors(h, t, z, false);
  z -= v * v.dot(z);
  out.second = -top + 2.0 * w.dot(z).real();
  return true;
}

}  // namespace detail

inline HDerivatives eval_h_derivatives(const Matrix &a, double theta)
{
  if (a.n() == 1)
  {
    HDerivatives out;
    out.theta = theta;
    const Complex w = std::polar(1.0, theta) * a(0, 0);
    out.value = w.real();
    out.first = -w.imag();
    out.second = -w.real();
    out.gap = std::numeric_limits<double>::infinity();
    return out;
  }
  HDerivatives out;
  if (detail::h_derivatives_fast(a, theta, out))
  {
    return out;
  }
  return detail::h_derivatives_dense(a, theta);
}

inline double sigma_max(const Matrix &a)
{
  Eigen::JacobiSVD<DenseMatrix> svd(a.entries());
  return svd.singularValues()(0);
}

inline Eigen::VectorXcd eigenvalues(const Matrix &a)
{
  Eigen::ComplexEigenSolver<DenseMatrix> es(a.entries(), false);
  if (es.info() != Eigen::Success)
  {
    throw EigensolverError("complex eigensolver failed", 0.0, a.n());
  }
  return es.eigenvalues();
}

inline double spectral_radius(const Matrix &a) { return eigenvalues(a).cwiseAbs().maxCoeff(); }

/// Smallest eigenvalue of a Hermitian matrix.
inline double lambda_min(const HermitianMatrix &m)
{
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(m.entries(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
  {
    throw EigensolverError("Hermitian eigensolver failed in lambda_min", 0.0, m.size());
  }
  return es.eigenvalues()(0);
}

}  // namespace numrad
