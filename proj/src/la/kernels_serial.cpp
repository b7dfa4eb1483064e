// Serial reference kernels. Kept deliberately plain; tests and the kernel
// benchmark compare the OpenMP versions against these.

#include <algorithm>

#include "aspatp/errors.hpp"
#include "aspatp/la.hpp"

namespace aspatp::la::serial {

Vector matvec(const DenseMatrix& a, const Vector& x) {
  if (x.size() != a.cols()) throw DimensionMismatch("matvec: length mismatch");
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Vector matvec_transposed(const DenseMatrix& a, const Vector& x) {
  if (x.size() != a.rows()) throw DimensionMismatch("matvec_transposed: length mismatch");
  Vector y(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] += a(i, j) * x[i];
  return y;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matmul: inner dimensions differ");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t p = 0; p < a.cols(); ++p)
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, p) * b(p, j);
  return c;
}

DenseMatrix gram(const DenseMatrix& a) {
  const std::size_t n = a.cols();
  DenseMatrix g(n, n);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j) == 0.0) continue;
      for (std::size_t k = 0; k < n; ++k) g(j, k) += a(i, j) * a(i, k);
    }
  return g;
}

}  // namespace aspatp::la::serial
