#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "aspatp/errors.hpp"
#include "aspatp/la.hpp"

namespace aspatp::la {

namespace {

double off_diagonal_norm(const DenseMatrix& a) {
  double s = 0.0;
  for (std::size_t p = 0; p < a.rows(); ++p)
    for (std::size_t q = p + 1; q < a.cols(); ++q) s += a(p, q) * a(p, q);
  return std::sqrt(2.0 * s);
}

void rotate(DenseMatrix& a, DenseMatrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const double akp = a(k, p), akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double apk = a(p, k), aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double vkp = v(k, p), vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

}  // namespace

SymEigen eig_sym_jacobi(const DenseMatrix& s, int max_sweeps) {
  if (!s.square()) throw DimensionMismatch("eig_sym_jacobi: matrix not square");
  if (s.asymmetry() > 1e-12 * s.max_abs()) throw InvalidArgument("eig_sym_jacobi: input is not symmetric");
  const std::size_t n = s.rows();
  DenseMatrix a = symmetrized(s);
  DenseMatrix v = DenseMatrix::identity(n);
  const double target = 1e-14 * s.frobenius();

  SymEigen out;
  double off = off_diagonal_norm(a);
  while (off > target) {
    if (out.sweeps >= max_sweeps) {
      std::ostringstream msg;
      msg << "eig_sym_jacobi: off-diagonal norm " << off << " after " << out.sweeps << " sweeps";
      throw NoConvergence(msg.str());
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
    ++out.sweeps;
    off = off_diagonal_norm(a);
  }
  out.off_norm = off;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });
  out.values.resize(n);
  out.vectors = DenseMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

}  // namespace aspatp::la
