#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>

#include "aspatp/krylov.hpp"
#include "aspatp/problems.hpp"

namespace aspatp::solvers {

using la::DenseMatrix;
using la::Vector;

struct AspConfig {
  double lambda = 1e-5;
  std::size_t m_max = 30;
  bool record_every_step = true;
};

struct AtpConfig {
  double lambda = 1.0;
  problems::RegOperatorKind reg;
  std::size_t m_max = 30;
  bool record_every_step = true;
};

enum class StopReason {
  MaxIterations,
  Breakdown,           // Arnoldi found an invariant subspace
  HessenbergSingular,  // H_m singular at the operator's precision; trace ends at m - 1
};
std::string stop_reason_name(StopReason r);

struct TraceRow {
  std::size_t m = 0;
  std::optional<double> rel_error;
  std::optional<double> abs_error;
  double residual = 0.0;
  double flops = 0.0;
};

struct SolverTrace {
  std::vector<TraceRow> rows;
  std::optional<double> seed_accuracy;  // |x_lambda - xbar_lambda| when computable
  double seed_norm = 0.0;               // |xbar_lambda|
  Vector seed;                          // xbar_lambda (empty for GMRES)
  Vector final_iterate;
  StopReason stop = StopReason::MaxIterations;
  std::size_t arnoldi_steps = 0;

  // Smallest recorded relative error and its m; requires errors.
  std::pair<double, std::size_t> min_error() const;
  double final_error() const;
};

// CSV with header m,rel_error,residual,flops. Missing errors are empty cells.
void write_trace_csv(const SolverTrace& t, std::ostream& os);

// f(H) e1 = e1 + lambda H^{-1} e1 for f(z) = 1 + lambda / z, one LU solve.
// H counts as singular when its estimated 2-norm condition number times
// `accuracy` reaches 1 (default: machine epsilon); that raises
// SingularToWorkingPrecision.
Vector eval_f_on_hessenberg(const DenseMatrix& hm, double lambda,
                            double accuracy = std::numeric_limits<double>::epsilon());

SolverTrace asp_solve(const problems::TestProblem& problem, const AspConfig& cfg);

// Data shared by every ATP run on the same A: the Gram matrix is the
// dominant setup cost and does not depend on lambda or H.
struct AtpSetup {
  std::shared_ptr<const DenseMatrix> a;
  std::shared_ptr<const DenseMatrix> ata;
  double gram_flops = 0.0;
};
AtpSetup prepare_atp(const DenseMatrix& a);

SolverTrace atp_solve(const DenseMatrix& a, const Vector& b_noisy, const std::optional<Vector>& x_exact,
                      const AtpConfig& cfg);
SolverTrace atp_solve(const AtpSetup& setup, const Vector& b_noisy, const std::optional<Vector>& x_exact,
                      const AtpConfig& cfg);

struct GmresOptions {
  krylov::Orthogonalization orthogonalization = krylov::Orthogonalization::Householder;
  // Residual reported in the trace. Defaults to |b - op(x)|.
  std::function<double(const Vector&)> residual;
  double setup_flops = 0.0;
};

SolverTrace gmres(const krylov::LinearOperator& op, const Vector& b, std::size_t m_max,
                  const std::optional<Vector>& x_exact, const GmresOptions& opts = {});

// GMRES on (A + lambda I)^{-1} A x = (A + lambda I)^{-1} b with one LU.
// The trace residual is the unpreconditioned |A x - b|.
SolverTrace pgmres(const DenseMatrix& a, const Vector& b, double lambda, std::size_t m_max,
                   const std::optional<Vector>& x_exact,
                   krylov::Orthogonalization orth = krylov::Orthogonalization::Householder);

struct DiscrepancyChoice {
  std::size_t m = 0;
  bool triggered = false;
};
DiscrepancyChoice discrepancy_stop(const SolverTrace& trace, double noise_norm_estimate, double tau = 1.01);

}  // namespace aspatp::solvers
