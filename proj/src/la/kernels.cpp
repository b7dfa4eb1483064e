// OpenMP kernels. Parallel loops run over output entries only and never use
// reductions: each y[i] or C(i, j) is summed by one thread in the same order
// as the serial reference, which keeps results bitwise reproducible.

#include <algorithm>

#include "aspatp/errors.hpp"
#include "aspatp/la.hpp"

namespace aspatp::la {

namespace {
constexpr std::size_t kParallelWork = 1u << 14;
constexpr std::size_t kColumnBlock = 64;
}  // namespace

Vector matvec(const DenseMatrix& a, const Vector& x) {
  if (x.size() != a.cols()) throw DimensionMismatch("matvec: length mismatch");
  const std::size_t m = a.rows(), n = a.cols();
  Vector y(m, 0.0);
  const double* pa = a.data();
  const double* px = x.data();
  const long long rows = static_cast<long long>(m);
#pragma omp parallel for schedule(static) if (m * n >= kParallelWork)
  for (long long i = 0; i < rows; ++i) {
    const double* r = pa + static_cast<std::size_t>(i) * n;
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += r[j] * px[j];
    y[static_cast<std::size_t>(i)] = s;
  }
  return y;
}

Vector matvec_transposed(const DenseMatrix& a, const Vector& x) {
  if (x.size() != a.rows()) throw DimensionMismatch("matvec_transposed: length mismatch");
  const std::size_t m = a.rows(), n = a.cols();
  Vector y(n, 0.0);
  const double* pa = a.data();
  const long long blocks = static_cast<long long>((n + kColumnBlock - 1) / kColumnBlock);
#pragma omp parallel for schedule(static) if (m * n >= kParallelWork)
  for (long long b = 0; b < blocks; ++b) {
    const std::size_t j0 = static_cast<std::size_t>(b) * kColumnBlock;
    const std::size_t j1 = std::min(n, j0 + kColumnBlock);
    for (std::size_t i = 0; i < m; ++i) {
      const double xi = x[i];
      const double* r = pa + i * n;
      for (std::size_t j = j0; j < j1; ++j) y[j] += r[j] * xi;
    }
  }
  return y;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matmul: inner dimensions differ");
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  DenseMatrix c(m, n);
  const long long rows = static_cast<long long>(m);
#pragma omp parallel for schedule(static) if (m * k * n >= kParallelWork)
  for (long long i = 0; i < rows; ++i) {
    double* ci = c.row(static_cast<std::size_t>(i));
    const double* ai = a.row(static_cast<std::size_t>(i));
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = ai[p];
      const double* bp = b.row(p);
      for (std::size_t j = 0; j < n; ++j) ci[j] += aip * bp[j];
    }
  }
  return c;
}

DenseMatrix gram(const DenseMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  DenseMatrix g(n, n);
  const long long cols = static_cast<long long>(n);
  // G(j, k) = sum_i a(i, j) a(i, k), i ascending. G(k, j) uses the same
  // products in the same order, so G is exactly symmetric.
#pragma omp parallel for schedule(dynamic, 8) if (m * n * n >= kParallelWork)
  for (long long jj = 0; jj < cols; ++jj) {
    const std::size_t j = static_cast<std::size_t>(jj);
    double* gj = g.row(j);
    for (std::size_t i = 0; i < m; ++i) {
      const double* r = a.row(i);
      const double aij = r[j];
      if (aij == 0.0) continue;
      for (std::size_t k = 0; k < n; ++k) gj[k] += aij * r[k];
    }
  }
  return g;
}

}  // namespace aspatp::la
