#include <sstream>

#include "aspatp/errors.hpp"
#include "aspatp/solvers.hpp"

namespace aspatp::solvers {

Vector eval_f_on_hessenberg(const DenseMatrix& hm, double lambda, double accuracy) {
  if (!hm.square() || hm.rows() == 0) throw DimensionMismatch("eval_f_on_hessenberg: H_m must be square and non-empty");
  if (!(lambda >= 0.0)) throw InvalidArgument("eval_f_on_hessenberg: lambda must be non-negative");
  const std::size_t m = hm.rows();
  Vector e1(m, 0.0);
  e1[0] = 1.0;
  if (lambda == 0.0) return e1;

  // f(H) = I + lambda H^{-1} exactly, so no Schur-Parlett machinery is needed.
  const la::LuFactors f = la::lu_factor(hm);
  const la::CondEstimate c = la::cond2_estimate(hm, f);
  if (!c.finite || c.kappa * accuracy >= 1.0) {
    std::ostringstream msg;
    msg << "eval_f_on_hessenberg: H_" << m << " has condition estimate " << c.kappa << " at operator accuracy "
        << accuracy;
    throw SingularToWorkingPrecision(msg.str());
  }
  Vector y = la::lu_solve(f, e1);
  la::scale(lambda, y);
  y[0] += 1.0;
  return y;
}

}  // namespace aspatp::solvers
