#include <algorithm>
#include <cmath>

#include "aspatp/errors.hpp"
#include "aspatp/la.hpp"

namespace aspatp::la {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (a_.size() != rows * cols) {
    throw DimensionMismatch("DenseMatrix: entry count does not match rows*cols");
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(const Vector& d) {
  DenseMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Vector DenseMatrix::column(std::size_t j) const {
  Vector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix DenseMatrix::block(std::size_t r, std::size_t c) const {
  if (r > rows_ || c > cols_) throw DimensionMismatch("block larger than matrix");
  DenseMatrix b(r, c);
  for (std::size_t i = 0; i < r; ++i) std::copy_n(row(i), c, b.row(i));
  return b;
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

double DenseMatrix::frobenius() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

bool DenseMatrix::all_finite() const {
  return std::all_of(a_.begin(), a_.end(), [](double v) { return std::isfinite(v); });
}

double DenseMatrix::asymmetry() const {
  if (!square()) throw DimensionMismatch("asymmetry of a non-square matrix");
  double m = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j) m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
  return m;
}

double dot(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) throw DimensionMismatch("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(const Vector& x) {
  // Scaled accumulation keeps tiny and huge vectors representable.
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double s = 0.0;
  for (double v : x) {
    const double t = v / scale;
    s += t * t;
  }
  return scale * std::sqrt(s);
}

double norm_inf(const Vector& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

void axpy(double alpha, const Vector& x, Vector& y) {
  if (x.size() != y.size()) throw DimensionMismatch("axpy: length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(double alpha, Vector& x) {
  for (double& v : x) v *= alpha;
}

Vector subtract(const Vector& x, const Vector& y) { return add_scaled(x, -1.0, y); }

Vector add_scaled(const Vector& x, double alpha, const Vector& y) {
  if (x.size() != y.size()) throw DimensionMismatch("add_scaled: length mismatch");
  Vector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + alpha * y[i];
  return r;
}

bool all_finite(const Vector& x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b, double beta) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("add: shape mismatch");
  DenseMatrix c = a;
  double* pc = c.data();
  const double* pb = b.data();
  for (std::size_t k = 0; k < a.rows() * a.cols(); ++k) pc[k] += beta * pb[k];
  return c;
}

DenseMatrix shifted(const DenseMatrix& a, double shift) {
  if (!a.square()) throw DimensionMismatch("shifted: matrix not square");
  DenseMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i) c(i, i) += shift;
  return c;
}

DenseMatrix symmetrized(const DenseMatrix& a) {
  if (!a.square()) throw DimensionMismatch("symmetrized: matrix not square");
  DenseMatrix s(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
  return s;
}

Reflector householder(const double* x, std::size_t n) {
  Reflector r;
  r.u.assign(x, x + n);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(x[i]));
  if (scale == 0.0) {
    r.beta = 0.0;
    r.alpha = 0.0;
    return r;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += (x[i] / scale) * (x[i] / scale);
  const double nx = scale * std::sqrt(s);
  r.alpha = x[0] >= 0.0 ? -nx : nx;
  r.u[0] -= r.alpha;
  double uu = 0.0;
  for (double v : r.u) uu += v * v;
  r.beta = uu > 0.0 ? 2.0 / uu : 0.0;
  return r;
}

void apply_reflector(const Reflector& r, double* y) {
  if (r.beta == 0.0) return;
  double s = 0.0;
  for (std::size_t i = 0; i < r.u.size(); ++i) s += r.u[i] * y[i];
  s *= r.beta;
  for (std::size_t i = 0; i < r.u.size(); ++i) y[i] -= s * r.u[i];
}

}  // namespace aspatp::la
