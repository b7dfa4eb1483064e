#pragma once

#include <functional>
#include <iosfwd>

#include "aspatp/krylov.hpp"

namespace aspatp::analysis {

using la::DenseMatrix;
using la::Vector;

// Spectral view of ASP on a symmetric A = Q diag(lambda_i) Q^T.
//   g_i        = lambda_i / (lambda_i + lambda)           (Tikhonov)
//   f_i^(m)    = lambda_i p_{m-1}(lambda_i) / (lambda_i + lambda)
// where p_{m-1} interpolates f(z) = 1 + lambda / z at the Ritz values of H_m.
//
// `corrected` is computed by projection: x_m = p_{m-1}(A) xbar, so
// f_i^(m) = g_i (q_i^T x_m) / (q_i^T xbar). It is exact up to roundoff for
// every m. `interpolated` evaluates the Newton form of p_{m-1} directly and
// loses accuracy as m approaches N, where p_{m-1} gets very steep.
struct FilterFactorReport {
  double lambda = 0.0;
  Vector eigenvalues;  // descending
  Vector g;
  std::vector<std::size_t> m_list;
  std::vector<Vector> corrected;
  std::vector<Vector> interpolated;
  std::vector<Vector> ritz;        // Ritz values per m, descending
  std::vector<double> p_at_zero;   // p_{m-1}(0) per m
};

// A symmetric; b drives the seed solve (A + lambda I) xbar = b.
FilterFactorReport filter_factors(const DenseMatrix& a, const Vector& b, double lambda,
                                  const std::vector<std::size_t>& m_list);
// i,eigenvalue,g_i,f_i_m<m>... with corrected factors.
void write_filter_csv(const FilterFactorReport& r, std::ostream& os);

// Newton divided differences of f at the nodes; coefficient k is f[x_0..x_k].
Vector divided_differences(const Vector& nodes, const std::function<double(double)>& f);
double newton_eval(const Vector& nodes, const Vector& coeffs, double z);

struct ErrorBoundReport {
  double a = 0.0;  // leftmost point of the field of values, lambda_min((A + A^T)/2)
  double lambda = 0.0;
  double seed_norm = 0.0;
  bool symmetric = false;
  double k_low = 2.0;
  double k_high = 11.08;
  double k_selected = 2.0;   // 1 for symmetric A
  Vector log10_bound;        // index m = 0 .. d.m, with k_selected
  Vector log10_bound_low;    // K = 2
  Vector log10_bound_high;   // K = 11.08
};

// |E_m| <= K lambda |x_lambda| a^{-(m+1)} prod_{i<=m} h_{i+1,i}, in log10.
// Throws NotApplicable when a <= 0.
ErrorBoundReport error_bound(const krylov::ArnoldiDecomposition& d, const DenseMatrix& a, double lambda,
                             double seed_norm);

struct DecayRow {
  std::size_t m = 0;
  double log10_product = 0.0;
  double ratio = 0.0;  // h_{m+1,m}
};
struct DecayReport {
  std::vector<DecayRow> rows;
  double slope = 0.0;  // least-squares slope of log10 h_{m+1,m} against m
  bool superlinear = false;
};
DecayReport decay_diagnostic(const krylov::ArnoldiDecomposition& d);

struct LambdaBalance {
  double lambda_star = 0.0;
  bool bracketed = false;  // false: no sign change on [1e-16, 1e2], lambda_star is the 1/sqrt(kappa) fallback
  double kappa = 0.0;
  double lambda_inv_kappa = 0.0;
  double lambda_inv_sqrt_kappa = 0.0;
};

// Bisection on log10(lambda) in [-16, 2] for kappa(A + lambda I) = kappa((A + lambda I)^{-1} A).
LambdaBalance lambda_balance(const DenseMatrix& a);

}  // namespace aspatp::analysis
