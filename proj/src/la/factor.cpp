#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "aspatp/errors.hpp"
#include "aspatp/la.hpp"

namespace aspatp::la {

namespace {
constexpr double kPivotFloor = 1e-300;
constexpr std::size_t kParallelWork = 1u << 14;
}  // namespace

LuFactors lu_factor(const DenseMatrix& a, Exec exec) {
  if (!a.square()) throw DimensionMismatch("lu_factor: matrix not square");
  const std::size_t n = a.rows();
  LuFactors f;
  f.lu = a;
  f.perm.resize(n);
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
  DenseMatrix& m = f.lu;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(m(i, k)) > best) {
        best = std::abs(m(i, k));
        p = i;
      }
    }
    if (!(best >= kPivotFloor)) {
      throw SingularToWorkingPrecision("lu_factor: pivot " + std::to_string(k) + " has magnitude " +
                                       std::to_string(best));
    }
    if (p != k) {
      std::swap_ranges(m.row(k), m.row(k) + n, m.row(p));
      std::swap(f.perm[k], f.perm[p]);
      f.sign = -f.sign;
    }
    const double pivot = m(k, k);
    const double* rk = m.row(k);
    const long long first = static_cast<long long>(k + 1);
    const long long last = static_cast<long long>(n);
    const bool par = exec == Exec::Parallel && (n - k) * (n - k) >= kParallelWork;
#pragma omp parallel for schedule(static) if (par)
    for (long long ii = first; ii < last; ++ii) {
      double* ri = m.row(static_cast<std::size_t>(ii));
      const double l = ri[k] / pivot;
      ri[k] = l;
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) ri[j] -= l * rk[j];
    }
  }
  return f;
}

Vector lu_solve(const LuFactors& f, const Vector& b) {
  const std::size_t n = f.lu.rows();
  if (b.size() != n) throw DimensionMismatch("lu_solve: right-hand side length mismatch");
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 0; i < n; ++i) {
    const double* r = f.lu.row(i);
    double s = x[i];
    for (std::size_t j = 0; j < i; ++j) s -= r[j] * x[j];
    x[i] = s;
  }
  for (std::size_t ii = n; ii-- > 0;) {
    const double* r = f.lu.row(ii);
    double s = x[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= r[j] * x[j];
    x[ii] = s / r[ii];
  }
  return x;
}

Vector lu_solve_transposed(const LuFactors& f, const Vector& b) {
  // P A = L U, so A^T = U^T L^T P and A^T x = b means U^T z = b, L^T w = z, x = P^T w.
  const std::size_t n = f.lu.rows();
  if (b.size() != n) throw DimensionMismatch("lu_solve_transposed: right-hand side length mismatch");
  Vector z = b;
  for (std::size_t i = 0; i < n; ++i) {
    z[i] /= f.lu(i, i);
    const double zi = z[i];
    const double* r = f.lu.row(i);
    for (std::size_t j = i + 1; j < n; ++j) z[j] -= r[j] * zi;
  }
  for (std::size_t ii = n; ii-- > 0;) {
    const double zi = z[ii];
    const double* r = f.lu.row(ii);
    for (std::size_t j = 0; j < ii; ++j) z[j] -= r[j] * zi;
  }
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[f.perm[i]] = z[i];
  return x;
}

CholeskyFactor cholesky_factor(const DenseMatrix& s, Exec exec) {
  if (!s.square()) throw DimensionMismatch("cholesky_factor: matrix not square");
  if (s.asymmetry() > 1e-12 * s.max_abs()) {
    throw InvalidArgument("cholesky_factor: input is not symmetric; symmetrize first");
  }
  const std::size_t n = s.rows();
  CholeskyFactor f;
  f.l = DenseMatrix(n, n);
  DenseMatrix& l = f.l;
  for (std::size_t j = 0; j < n; ++j) {
    const double* lj = l.row(j);
    double d = s(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= lj[k] * lj[k];
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw NotPositiveDefinite("cholesky_factor: pivot " + std::to_string(j) + " is " + std::to_string(d));
    }
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    const long long first = static_cast<long long>(j + 1);
    const long long last = static_cast<long long>(n);
    const bool par = exec == Exec::Parallel && (n - j) * j >= kParallelWork;
#pragma omp parallel for schedule(static) if (par)
    for (long long ii = first; ii < last; ++ii) {
      const std::size_t i = static_cast<std::size_t>(ii);
      double* li = l.row(i);
      double t = s(i, j);
      for (std::size_t k = 0; k < j; ++k) t -= li[k] * lj[k];
      li[j] = t / ljj;
    }
  }
  return f;
}

Vector cholesky_solve(const CholeskyFactor& f, const Vector& b) {
  const std::size_t n = f.l.rows();
  if (b.size() != n) throw DimensionMismatch("cholesky_solve: right-hand side length mismatch");
  Vector x = b;
  for (std::size_t i = 0; i < n; ++i) {
    const double* r = f.l.row(i);
    double t = x[i];
    for (std::size_t k = 0; k < i; ++k) t -= r[k] * x[k];
    x[i] = t / r[i];
  }
  // L^T x = y, column-oriented so L is still read by rows.
  for (std::size_t ii = n; ii-- > 0;) {
    x[ii] /= f.l(ii, ii);
    const double xi = x[ii];
    const double* r = f.l.row(ii);
    for (std::size_t k = 0; k < ii; ++k) x[k] -= r[k] * xi;
  }
  return x;
}

}  // namespace aspatp::la
