#include <cmath>
#include <limits>

#include "aspatp/errors.hpp"
#include "aspatp/solvers.hpp"

namespace aspatp::solvers {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double cube(double n) { return n * n * n; }

struct Reconstruction {
  krylov::LinearOperator op;
  Vector seed;
  double lambda = 0.0;
  std::size_t m_max = 0;
  bool record_every_step = true;
  double setup_flops = 0.0;
  std::function<double(const Vector&)> residual;
  const std::optional<Vector>* x_exact = nullptr;
};

// x_m = |xbar| V_m f(H_m) e1 over an incremental MGS Arnoldi run seeded with
// xbar / |xbar|. Shared by ASP and ATP, which differ only in the operator.
SolverTrace reconstruct(const Reconstruction& in) {
  SolverTrace t;
  t.seed = in.seed;
  t.seed_norm = la::norm2(in.seed);
  t.final_iterate = in.seed;
  if (!(t.seed_norm > 0.0)) throw InvalidArgument("seed solution is zero; nothing to reconstruct");

  const double n = static_cast<double>(in.op.dim);
  const double x_norm = in.x_exact && in.x_exact->has_value() ? la::norm2(**in.x_exact) : 0.0;
  krylov::ArnoldiProcess proc(in.op, in.seed, krylov::Orthogonalization::MGS);
  double assembly_flops = 0.0;
  Vector last_y;
  std::size_t last_m = 0;
  bool last_recorded = false;

  auto record = [&](std::size_t m, const Vector& y) {
    Vector x = proc.combine(y);
    la::scale(t.seed_norm, x);
    assembly_flops += 2.0 * n * static_cast<double>(m) + n;
    TraceRow row;
    row.m = m;
    if (x_norm > 0.0) {
      const double e = la::norm2(la::subtract(x, **in.x_exact));
      row.abs_error = e;
      row.rel_error = e / x_norm;
    }
    row.residual = in.residual(x);
    row.flops = in.setup_flops + proc.flops() + assembly_flops;
    t.rows.push_back(row);
    t.final_iterate = std::move(x);
  };

  for (std::size_t m = 1; m <= in.m_max; ++m) {
    if (!proc.step()) break;
    Vector y;
    try {
      y = eval_f_on_hessenberg(proc.square(m), in.lambda, in.op.relative_accuracy);
    } catch (const SingularToWorkingPrecision&) {
      t.stop = StopReason::HessenbergSingular;
      break;
    }
    last_y = std::move(y);
    last_m = m;
    last_recorded = in.record_every_step;
    if (in.record_every_step) record(m, last_y);
    if (proc.breakdown()) {
      t.stop = StopReason::Breakdown;
      break;
    }
  }
  if (last_m > 0 && !last_recorded) record(last_m, last_y);
  t.arnoldi_steps = proc.steps();
  return t;
}

void check_config(double lambda, std::size_t m_max) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be positive and finite");
  if (m_max == 0) throw InvalidArgument("m_max must be at least 1");
}

}  // namespace

SolverTrace asp_solve(const problems::TestProblem& problem, const AspConfig& cfg) {
  check_config(cfg.lambda, cfg.m_max);
  const DenseMatrix& a = problem.a;
  if (!a.square() || problem.b_exact.size() != a.rows()) throw DimensionMismatch("asp_solve: inconsistent problem");
  const double n = static_cast<double>(a.rows());

  const la::LuFactors lu = la::lu_factor(la::shifted(a, cfg.lambda));
  const Vector xbar = la::lu_solve(lu, problem.b_exact);
  double setup = 2.0 / 3.0 * cube(n) + 2.0 * n * n;

  auto shared_a = std::make_shared<const DenseMatrix>(a);
  const std::optional<Vector> x_exact =
      problem.x_exact.empty() ? std::nullopt : std::optional<Vector>(problem.x_exact);
  Reconstruction in;
  in.op = krylov::dense_operator(shared_a);
  in.seed = xbar;
  in.lambda = cfg.lambda;
  in.m_max = cfg.m_max;
  in.record_every_step = cfg.record_every_step;
  in.setup_flops = setup;
  in.residual = [&](const Vector& x) { return la::norm2(la::subtract(la::matvec(a, x), problem.b_exact)); };
  in.x_exact = &x_exact;
  SolverTrace t = reconstruct(in);

  if (x_exact) {
    // x_lambda = (A + lambda I)^{-1} A x = x - lambda (A + lambda I)^{-1} x
    const Vector corr = la::lu_solve(lu, *x_exact);
    const Vector x_lambda = la::add_scaled(*x_exact, -cfg.lambda, corr);
    t.seed_accuracy = la::norm2(la::subtract(x_lambda, xbar));
  }
  return t;
}

AtpSetup prepare_atp(const DenseMatrix& a) {
  AtpSetup s;
  s.a = std::make_shared<const DenseMatrix>(a);
  s.ata = std::make_shared<const DenseMatrix>(la::gram(a));
  s.gram_flops = 2.0 * static_cast<double>(a.rows()) * static_cast<double>(a.cols()) * static_cast<double>(a.cols());
  return s;
}

SolverTrace atp_solve(const DenseMatrix& a, const Vector& b_noisy, const std::optional<Vector>& x_exact,
                      const AtpConfig& cfg) {
  return atp_solve(prepare_atp(a), b_noisy, x_exact, cfg);
}

SolverTrace atp_solve(const AtpSetup& setup, const Vector& b_noisy, const std::optional<Vector>& x_exact,
                      const AtpConfig& cfg) {
  check_config(cfg.lambda, cfg.m_max);
  const DenseMatrix& a = *setup.a;
  const std::size_t big_n = a.cols();
  if (b_noisy.size() != a.rows()) throw DimensionMismatch("atp_solve: right-hand side length mismatch");
  if (x_exact && x_exact->size() != big_n) throw DimensionMismatch("atp_solve: x_exact length mismatch");
  problems::RegOperatorKind reg = cfg.reg;
  if (reg.unknowns == 0) reg.unknowns = big_n;
  if (reg.unknowns != big_n) throw DimensionMismatch("atp_solve: regularization grid does not match N");

  const double n = static_cast<double>(big_n);
  const DenseMatrix h = problems::build_reg_operator(reg);
  const DenseMatrix hth = la::gram(h);
  double setup_flops = setup.gram_flops + 2.0 * static_cast<double>(h.rows()) * n * n;

  // (A^T A + lambda H^T H) xbar = A^T b
  const la::CholeskyFactor normal = la::cholesky_factor(la::add(*setup.ata, hth, cfg.lambda));
  const Vector xbar = la::cholesky_solve(normal, la::matvec_transposed(a, b_noisy));
  setup_flops += cube(n) / 3.0 + 2.0 * n * n + 2.0 * static_cast<double>(a.rows()) * n;

  auto hth_factor = std::make_shared<const la::CholeskyFactor>(la::cholesky_factor(hth));
  setup_flops += cube(n) / 3.0;
  const la::CondEstimate kh = la::cond2_estimate_spd(hth, *hth_factor);
  setup_flops += 30.0 * (2.0 * n * n) + 30.0 * (2.0 * n * n);

  // Q v = (H^T H)^{-1} (A^T A) v, never formed. Each apply inherits the
  // forward error of the inner solve, about N eps kappa(H^T H).
  auto ata = setup.ata;
  const double accuracy = n * kEps * kh.kappa;
  Reconstruction in;
  in.op = krylov::make_operator(
      big_n, [ata, hth_factor](const Vector& v) { return la::cholesky_solve(*hth_factor, la::matvec(*ata, v)); },
      4.0 * n * n, accuracy);
  in.seed = xbar;
  in.lambda = cfg.lambda;
  in.m_max = cfg.m_max;
  in.record_every_step = cfg.record_every_step;
  in.setup_flops = setup_flops;
  in.residual = [&](const Vector& x) { return la::norm2(la::subtract(la::matvec(a, x), b_noisy)); };
  in.x_exact = &x_exact;
  return reconstruct(in);
}

std::string stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::MaxIterations: return "max_iterations";
    case StopReason::Breakdown: return "breakdown";
    case StopReason::HessenbergSingular: return "hessenberg_singular";
  }
  return "unknown";
}

}  // namespace aspatp::solvers
