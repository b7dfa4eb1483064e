#include <cmath>
#include <limits>

#include "aspatp/errors.hpp"
#include "aspatp/la.hpp"

namespace aspatp::la {

namespace {

constexpr int kIterations = 30;

Vector unit_ones(std::size_t n) { return Vector(n, 1.0 / std::sqrt(static_cast<double>(n))); }

// Runs x <- op(x)/|op(x)| kIterations times and returns the last |op(x)|.
template <class Op>
double power_growth(std::size_t n, Op op) {
  Vector x = unit_ones(n);
  double growth = 0.0;
  for (int it = 0; it < kIterations; ++it) {
    Vector y = op(x);
    growth = norm2(y);
    if (!(growth > 0.0) || !std::isfinite(growth)) return growth;
    scale(1.0 / growth, y);
    x = std::move(y);
  }
  return growth;
}

CondEstimate infinite(double sigma_max) {
  CondEstimate c;
  c.kappa = std::numeric_limits<double>::infinity();
  c.sigma_max = sigma_max;
  c.sigma_min = 0.0;
  c.finite = false;
  return c;
}

}  // namespace

CondEstimate cond2_estimate(const DenseMatrix& a) {
  if (!a.square()) throw DimensionMismatch("cond2_estimate: matrix not square");
  const std::size_t n = a.rows();
  if (n == 0) return {};
  LuFactors f;
  try {
    f = lu_factor(a);
  } catch (const SingularToWorkingPrecision&) {
    return infinite(std::sqrt(power_growth(n, [&](const Vector& x) { return matvec_transposed(a, matvec(a, x)); })));
  }
  return cond2_estimate(a, f);
}

CondEstimate cond2_estimate(const DenseMatrix& a, const LuFactors& f) {
  const std::size_t n = a.rows();
  if (n == 0) return {};
  if (f.lu.rows() != n) throw DimensionMismatch("cond2_estimate: factors do not match the matrix");
  const double smax = std::sqrt(power_growth(n, [&](const Vector& x) { return matvec_transposed(a, matvec(a, x)); }));
  const double inv = power_growth(n, [&](const Vector& x) { return lu_solve(f, lu_solve_transposed(f, x)); });
  if (!std::isfinite(inv) || inv <= 0.0) return infinite(smax);

  CondEstimate c;
  c.sigma_max = smax;
  c.sigma_min = 1.0 / std::sqrt(inv);
  c.kappa = c.sigma_max / c.sigma_min;
  return c;
}

CondEstimate cond2_estimate_spd(const DenseMatrix& s, const CholeskyFactor& f) {
  const std::size_t n = s.rows();
  if (n == 0) return {};
  const double lmax = power_growth(n, [&](const Vector& x) { return matvec(s, x); });
  const double inv = power_growth(n, [&](const Vector& x) { return cholesky_solve(f, x); });
  if (!std::isfinite(inv) || inv <= 0.0) return infinite(lmax);
  CondEstimate c;
  c.sigma_max = lmax;
  c.sigma_min = 1.0 / inv;
  c.kappa = c.sigma_max / c.sigma_min;
  return c;
}

}  // namespace aspatp::la
