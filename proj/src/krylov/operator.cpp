#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "aspatp/errors.hpp"
#include "aspatp/krylov.hpp"

namespace aspatp::krylov {

namespace {

constexpr int kProbes = 3;
constexpr std::uint64_t kProbeSeed = 0x5eedULL;

Vector random_vector(std::size_t n, std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector x(n);
  for (double& v : x) v = u(g);
  return x;
}

}  // namespace

LinearOperator make_operator(std::size_t dim, std::function<Vector(const Vector&)> apply, double flops_per_apply,
                             double relative_accuracy) {
  if (dim == 0) throw InvalidArgument("make_operator: zero dimension");
  if (!apply) throw InvalidArgument("make_operator: empty apply");
  LinearOperator op{dim, std::move(apply), flops_per_apply, relative_accuracy};

  const double tol = std::max(1e-12, 100.0 * relative_accuracy);
  std::mt19937_64 g(kProbeSeed);
  for (int p = 0; p < kProbes; ++p) {
    const Vector x = random_vector(dim, g);
    const Vector y = random_vector(dim, g);
    const double alpha = 0.5 + std::generate_canonical<double, 53>(g);
    const double beta = -0.5 - std::generate_canonical<double, 53>(g);
    const Vector ax = op.apply(x);
    const Vector ay = op.apply(y);
    if (ax.size() != dim || ay.size() != dim) throw DimensionMismatch("make_operator: apply returned wrong length");
    const Vector lhs = op.apply(la::add_scaled(la::add_scaled(Vector(dim, 0.0), alpha, x), beta, y));
    const Vector rhs = la::add_scaled(la::add_scaled(Vector(dim, 0.0), alpha, ax), beta, ay);
    const double scale = std::abs(alpha) * la::norm2(ax) + std::abs(beta) * la::norm2(ay);
    const double err = la::norm2(la::subtract(lhs, rhs));
    if (!(err <= tol * scale + std::numeric_limits<double>::min())) {
      throw InvalidArgument("make_operator: linearity probe failed (relative defect " + std::to_string(err / scale) +
                            ")");
    }
  }
  return op;
}

LinearOperator dense_operator(std::shared_ptr<const DenseMatrix> a) {
  if (!a || !a->square()) throw InvalidArgument("dense_operator: matrix must be square");
  const std::size_t n = a->rows();
  const double nd = static_cast<double>(n);
  return make_operator(
      n, [a](const Vector& x) { return la::matvec(*a, x); }, 2.0 * nd * nd,
      nd * std::numeric_limits<double>::epsilon());
}

LinearOperator dense_operator(const DenseMatrix& a) { return dense_operator(std::make_shared<const DenseMatrix>(a)); }

}  // namespace aspatp::krylov
