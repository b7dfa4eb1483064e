#include <cmath>
#include <limits>

#include "aspatp/errors.hpp"
#include "aspatp/solvers.hpp"

namespace aspatp::solvers {

SolverTrace gmres(const krylov::LinearOperator& op, const Vector& b, std::size_t m_max,
                  const std::optional<Vector>& x_exact, const GmresOptions& opts) {
  if (b.size() != op.dim) throw DimensionMismatch("gmres: right-hand side length mismatch");
  if (m_max == 0) throw InvalidArgument("gmres: m_max must be at least 1");
  const double beta = la::norm2(b);
  if (!(beta > 0.0)) throw InvalidArgument("gmres: zero right-hand side");
  const double n = static_cast<double>(op.dim);
  const double x_norm = x_exact ? la::norm2(*x_exact) : 0.0;
  auto residual = opts.residual ? opts.residual
                                : std::function<double(const Vector&)>([&](const Vector& x) {
                                    return la::norm2(la::subtract(op.apply(x), b));
                                  });

  SolverTrace t;
  t.final_iterate = Vector(op.dim, 0.0);
  krylov::ArnoldiProcess proc(op, b, opts.orthogonalization);

  // R is the rotated Hessenberg, stored by columns; g the rotated beta e1.
  std::vector<Vector> r;
  std::vector<double> cs, sn;
  Vector g{beta};
  double assembly_flops = 0.0;

  for (std::size_t m = 1; m <= m_max; ++m) {
    if (!proc.step()) break;
    const std::size_t j = m - 1;
    Vector col(j + 2);
    for (std::size_t i = 0; i <= j + 1; ++i) col[i] = proc.h(i, j);
    for (std::size_t i = 0; i < j; ++i) {
      const double a = col[i], c = col[i + 1];
      col[i] = cs[i] * a + sn[i] * c;
      col[i + 1] = -sn[i] * a + cs[i] * c;
    }
    const double den = std::hypot(col[j], col[j + 1]);
    const double c = den == 0.0 ? 1.0 : col[j] / den;
    const double s = den == 0.0 ? 0.0 : col[j + 1] / den;
    cs.push_back(c);
    sn.push_back(s);
    col[j] = den;
    col.pop_back();
    r.push_back(std::move(col));
    g.push_back(-s * g[j]);
    g[j] = c * g[j];

    Vector y(m);
    for (std::size_t ii = m; ii-- > 0;) {
      double acc = g[ii];
      for (std::size_t k = ii + 1; k < m; ++k) acc -= r[k][ii] * y[k];
      if (r[ii][ii] == 0.0) throw SingularToWorkingPrecision("gmres: least-squares factor is singular");
      y[ii] = acc / r[ii][ii];
    }
    Vector x = proc.combine(y);
    assembly_flops += 2.0 * n * static_cast<double>(m);

    TraceRow row;
    row.m = m;
    if (x_exact) {
      const double e = la::norm2(la::subtract(x, *x_exact));
      row.abs_error = e;
      row.rel_error = x_norm > 0.0 ? e / x_norm : e;
    }
    row.residual = residual(x);
    row.flops = opts.setup_flops + proc.flops() + assembly_flops;
    t.rows.push_back(row);
    t.final_iterate = std::move(x);
    if (proc.breakdown()) {
      t.stop = StopReason::Breakdown;
      break;
    }
  }
  t.arnoldi_steps = proc.steps();
  return t;
}

SolverTrace pgmres(const DenseMatrix& a, const Vector& b, double lambda, std::size_t m_max,
                   const std::optional<Vector>& x_exact, krylov::Orthogonalization orth) {
  if (!(lambda > 0.0)) throw InvalidArgument("pgmres: lambda must be positive");
  if (!a.square() || b.size() != a.rows()) throw DimensionMismatch("pgmres: inconsistent system");
  const double n = static_cast<double>(a.rows());
  auto shared_a = std::make_shared<const DenseMatrix>(a);
  const DenseMatrix shifted = la::shifted(a, lambda);
  auto lu = std::make_shared<const la::LuFactors>(la::lu_factor(shifted));
  // The inner solve makes each apply accurate only to about N eps kappa(A + lambda I).
  const double kappa = la::cond2_estimate(shifted, *lu).kappa;
  const krylov::LinearOperator op = krylov::make_operator(
      a.rows(), [shared_a, lu](const Vector& v) { return la::lu_solve(*lu, la::matvec(*shared_a, v)); },
      4.0 * n * n, n * std::numeric_limits<double>::epsilon() * kappa);
  const Vector rhs = la::lu_solve(*lu, b);

  GmresOptions opts;
  opts.orthogonalization = orth;
  opts.setup_flops = 2.0 / 3.0 * n * n * n + 2.0 * n * n + 30.0 * 8.0 * n * n;
  opts.residual = [shared_a, &b](const Vector& x) { return la::norm2(la::subtract(la::matvec(*shared_a, x), b)); };
  return gmres(op, rhs, m_max, x_exact, opts);
}

DiscrepancyChoice discrepancy_stop(const SolverTrace& trace, double noise_norm_estimate, double tau) {
  DiscrepancyChoice c;
  if (trace.rows.empty()) return c;
  const double threshold = tau * noise_norm_estimate;
  for (const TraceRow& row : trace.rows) {
    if (row.residual <= threshold) {
      c.m = row.m;
      c.triggered = true;
      return c;
    }
  }
  c.m = trace.rows.back().m;
  return c;
}

}  // namespace aspatp::solvers
