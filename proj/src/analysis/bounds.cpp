#include <cmath>
#include <sstream>

#include "aspatp/analysis.hpp"
#include "aspatp/errors.hpp"

namespace aspatp::analysis {

ErrorBoundReport error_bound(const krylov::ArnoldiDecomposition& d, const DenseMatrix& a, double lambda,
                             double seed_norm) {
  if (!a.square()) throw DimensionMismatch("error_bound: matrix not square");
  ErrorBoundReport r;
  r.lambda = lambda;
  r.seed_norm = seed_norm;
  r.a = la::eig_sym_jacobi(la::symmetrized(a)).values.back();
  if (!(r.a > 0.0)) {
    std::ostringstream msg;
    msg << "error_bound: field of values reaches " << r.a << ", bound needs a > 0";
    throw NotApplicable(msg.str());
  }
  r.symmetric = a.asymmetry() <= 1e-12 * a.max_abs();
  r.k_selected = r.symmetric ? 1.0 : r.k_low;

  const double base = std::log10(lambda) + std::log10(seed_norm);
  const double log_a = std::log10(r.a);
  for (std::size_t m = 0; m <= d.m; ++m) {
    const double core = base - static_cast<double>(m + 1) * log_a + krylov::subdiag_product(d, m).log10_abs;
    r.log10_bound.push_back(std::log10(r.k_selected) + core);
    r.log10_bound_low.push_back(std::log10(r.k_low) + core);
    r.log10_bound_high.push_back(std::log10(r.k_high) + core);
  }
  return r;
}

DecayReport decay_diagnostic(const krylov::ArnoldiDecomposition& d) {
  if (d.m < 3) throw InvalidArgument("decay_diagnostic: need at least 3 Arnoldi steps");
  DecayReport r;
  for (std::size_t m = 1; m <= d.m; ++m) {
    DecayRow row;
    row.m = m;
    row.log10_product = krylov::subdiag_product(d, m).log10_abs;
    row.ratio = d.h(m, m - 1);
    r.rows.push_back(row);
  }
  // Least-squares slope of log10 h_{m+1,m} over the steps with a nonzero h.
  double sx = 0, sy = 0, sxx = 0, sxy = 0, cnt = 0;
  for (const DecayRow& row : r.rows) {
    if (!(row.ratio > 0.0)) continue;
    const double x = static_cast<double>(row.m), y = std::log10(row.ratio);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    cnt += 1;
  }
  const double den = cnt * sxx - sx * sx;
  r.slope = den > 0.0 ? (cnt * sxy - sx * sy) / den : 0.0;
  // A constant ratio gives a slope that is zero up to rounding; demand a
  // clear downward trend.
  r.superlinear = r.slope < -1e-10;
  return r;
}

}  // namespace aspatp::analysis
