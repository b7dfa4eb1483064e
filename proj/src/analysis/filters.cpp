#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "aspatp/analysis.hpp"
#include "aspatp/errors.hpp"
#include "aspatp/solvers.hpp"

namespace aspatp::analysis {

Vector divided_differences(const Vector& nodes, const std::function<double(double)>& f) {
  const std::size_t n = nodes.size();
  Vector c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = f(nodes[i]);
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = n - 1; i >= k; --i) c[i] = (c[i] - c[i - 1]) / (nodes[i] - nodes[i - k]);
  return c;
}

double newton_eval(const Vector& nodes, const Vector& coeffs, double z) {
  if (coeffs.empty()) return 0.0;
  double p = coeffs.back();
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) p = coeffs[k] + (z - nodes[k]) * p;
  return p;
}

FilterFactorReport filter_factors(const DenseMatrix& a, const Vector& b, double lambda,
                                  const std::vector<std::size_t>& m_list) {
  if (!a.square()) throw DimensionMismatch("filter_factors: matrix not square");
  if (a.asymmetry() > 1e-12 * a.max_abs()) throw NotApplicable("filter_factors: A must be symmetric");
  if (!(lambda >= 0.0)) throw InvalidArgument("filter_factors: lambda must be non-negative");
  if (b.size() != a.rows()) throw DimensionMismatch("filter_factors: b length mismatch");
  const std::size_t n = a.rows();

  FilterFactorReport r;
  r.lambda = lambda;
  r.m_list = m_list;
  const la::SymEigen eig = la::eig_sym_jacobi(a);
  r.eigenvalues = eig.values;
  r.g.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.g[i] = eig.values[i] / (eig.values[i] + lambda);

  const Vector xbar = la::lu_solve(la::lu_factor(la::shifted(a, lambda)), b);
  const double xbar_norm = la::norm2(xbar);
  const Vector xbar_coef = la::matvec_transposed(eig.vectors, xbar);

  std::size_t m_top = 0;
  for (std::size_t m : m_list) {
    if (m == 0) throw InvalidArgument("filter_factors: m must be positive");
    m_top = std::max(m_top, m);
  }
  krylov::ArnoldiProcess proc(krylov::dense_operator(a), xbar, krylov::Orthogonalization::MGS);
  while (proc.steps() < m_top && proc.step()) {
  }
  if (proc.steps() < m_top) {
    throw InvalidArgument("filter_factors: Krylov space exhausted after " + std::to_string(proc.steps()) + " steps");
  }

  const auto f = [lambda](double z) { return 1.0 + lambda / z; };
  for (std::size_t m : m_list) {
    const DenseMatrix hm = proc.square(m);

    Vector xm = proc.combine(solvers::eval_f_on_hessenberg(hm, lambda));
    la::scale(xbar_norm, xm);
    const Vector xm_coef = la::matvec_transposed(eig.vectors, xm);
    Vector corrected(n);
    for (std::size_t i = 0; i < n; ++i) corrected[i] = r.g[i] * xm_coef[i] / xbar_coef[i];

    const Vector ritz = la::eig_sym_jacobi(la::symmetrized(hm)).values;
    const double span = std::max(std::abs(ritz.front()), std::abs(ritz.back()));
    for (std::size_t j = 0; j + 1 < ritz.size(); ++j) {
      if (ritz[j] - ritz[j + 1] <= 1e-12 * span) {
        throw ConfluentRitzValues("filter_factors: Ritz values " + std::to_string(j) + " and " +
                                  std::to_string(j + 1) + " coincide at m = " + std::to_string(m));
      }
    }
    const Vector coeffs = divided_differences(ritz, f);
    Vector interpolated(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double li = eig.values[i];
      interpolated[i] = li * newton_eval(ritz, coeffs, li) / (li + lambda);
    }
    r.corrected.push_back(std::move(corrected));
    r.interpolated.push_back(std::move(interpolated));
    r.p_at_zero.push_back(newton_eval(ritz, coeffs, 0.0));
    r.ritz.push_back(ritz);
  }
  return r;
}

void write_filter_csv(const FilterFactorReport& r, std::ostream& os) {
  auto real = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  os << "i,eigenvalue,g_i";
  for (std::size_t m : r.m_list) os << ",f_i_m" << m;
  os << '\n';
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
    os << (i + 1) << ',' << real(r.eigenvalues[i]) << ',' << real(r.g[i]);
    for (const Vector& f : r.corrected) os << ',' << real(f[i]);
    os << '\n';
  }
}

}  // namespace aspatp::analysis
