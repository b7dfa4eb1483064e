#include <cmath>

#include "aspatp/analysis.hpp"
#include "aspatp/errors.hpp"

namespace aspatp::analysis {

namespace {

constexpr double kLogLo = -16.0;
constexpr double kLogHi = 2.0;
constexpr int kBisections = 60;

// log kappa(A + lambda I) - log kappa((A + lambda I)^{-1} A). The composed
// matrix is built column by column from one LU of the shifted matrix.
double imbalance(const DenseMatrix& a, double lambda) {
  const DenseMatrix shifted = la::shifted(a, lambda);
  const la::LuFactors lu = la::lu_factor(shifted);
  const la::CondEstimate left = la::cond2_estimate(shifted, lu);
  const std::size_t n = a.rows();
  DenseMatrix composed(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const Vector col = la::lu_solve(lu, a.column(j));
    for (std::size_t i = 0; i < n; ++i) composed(i, j) = col[i];
  }
  const la::CondEstimate right = la::cond2_estimate(composed);
  return std::log(left.kappa) - std::log(right.kappa);
}

}  // namespace

LambdaBalance lambda_balance(const DenseMatrix& a) {
  if (!a.square()) throw DimensionMismatch("lambda_balance: matrix not square");
  LambdaBalance r;
  r.kappa = la::cond2_estimate(a).kappa;
  r.lambda_inv_kappa = 1.0 / r.kappa;
  r.lambda_inv_sqrt_kappa = 1.0 / std::sqrt(r.kappa);

  double lo = kLogLo, hi = kLogHi;
  double f_lo = imbalance(a, std::pow(10.0, lo));
  const double f_hi = imbalance(a, std::pow(10.0, hi));
  // Below this the two sides agree to estimator noise; treat it as no sign.
  constexpr double kFlat = 1e-9;
  if (!(std::abs(f_lo) > kFlat && std::abs(f_hi) > kFlat && (f_lo > 0) != (f_hi > 0))) {
    r.lambda_star = r.lambda_inv_sqrt_kappa;
    r.bracketed = false;
    return r;
  }
  for (int it = 0; it < kBisections && hi - lo > 1e-10; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = imbalance(a, std::pow(10.0, mid));
    if ((f_mid > 0) == (f_lo > 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  r.lambda_star = std::pow(10.0, 0.5 * (lo + hi));
  r.bracketed = true;
  return r;
}

}  // namespace aspatp::analysis
