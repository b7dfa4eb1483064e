#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "aspatp/analysis.hpp"
#include "aspatp/errors.hpp"
#include "aspatp/problems.hpp"

using namespace aspatp;
using la::DenseMatrix;
using la::Vector;

namespace {

// Lagrange form of the interpolant through (nodes[k], f(nodes[k])).
double lagrange(const Vector& nodes, const std::function<double(double)>& f, double z) {
  double s = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    double w = f(nodes[k]);
    for (std::size_t j = 0; j < nodes.size(); ++j)
      if (j != k) w *= (z - nodes[j]) / (nodes[k] - nodes[j]);
    s += w;
  }
  return s;
}

krylov::ArnoldiDecomposition with_subdiagonal(const Vector& h) {
  krylov::ArnoldiDecomposition d;
  d.m = h.size();
  d.h = DenseMatrix(d.m + 1, d.m);
  for (std::size_t j = 0; j < d.m; ++j) {
    d.h(j, j) = 1.0;
    d.h(j + 1, j) = h[j];
  }
  return d;
}

}  // namespace

TEST_CASE("divided differences agree with the Lagrange form") {
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  const auto f = [](double z) { return 1.0 + 0.01 / z; };
  for (int trial = 0; trial < 20; ++trial) {
    Vector nodes(2 + trial % 6);
    for (double& x : nodes) x = u(g);
    const Vector c = analysis::divided_differences(nodes, f);
    for (double z : {0.05, 0.3, 1.0, 1.7}) {
      const double want = lagrange(nodes, f, z);
      CHECK(analysis::newton_eval(nodes, c, z) == doctest::Approx(want).epsilon(1e-9));
    }
    for (double x : nodes) CHECK(analysis::newton_eval(nodes, c, x) == doctest::Approx(f(x)).epsilon(1e-12));
  }
  const Vector c = analysis::divided_differences({0.0, 1.0, 2.0}, [](double z) { return z * z; });
  CHECK(c == Vector{0.0, 1.0, 1.0});
}

TEST_CASE("filter factors on GRAVITY(12)") {
  const problems::TestProblem p = problems::generate("gravity", 12);
  const double lambda = 1.0 / std::sqrt(la::cond2_estimate(p.a).kappa);
  const analysis::FilterFactorReport r = analysis::filter_factors(p.a, p.b_exact, lambda, {4, 6, 8, 10, 12});

  for (std::size_t i = 0; i < 12; ++i)
    CHECK(r.g[i] == doctest::Approx(r.eigenvalues[i] / (r.eigenvalues[i] + lambda)));
  // m = N interpolates f on the whole spectrum.
  for (double f : r.corrected.back()) CHECK(std::abs(f - 1.0) <= 1e-8);

  // Closed form: z p(z) = z + lambda - lambda prod_j (1 - z / r_j) for the Ritz
  // values r_j, so f_i = 1 - lambda prod_j (1 - lambda_i / r_j) / (lambda_i + lambda).
  for (std::size_t k = 0; k < 3; ++k) {
    const Vector& ritz = r.ritz[k];
    for (std::size_t i = 0; i < 12; ++i) {
      const double li = r.eigenvalues[i];
      double prod = 1.0;
      for (double rj : ritz) prod *= 1.0 - li / rj;
      const double want = 1.0 - lambda * prod / (li + lambda);
      CHECK(r.corrected[k][i] == doctest::Approx(want).epsilon(1e-6));
      CHECK(r.interpolated[k][i] == doctest::Approx(want).epsilon(1e-6));
    }
    double p0 = 0.0;
    for (double rj : ritz) p0 += 1.0 / rj;
    // p(0) = 1 + lambda sum_j 1 / r_j from the derivative of z p(z) at 0.
    CHECK(r.p_at_zero[k] == doctest::Approx(1.0 + lambda * p0).epsilon(1e-8));
  }

  // Leading factors near 1 at m = 8, trailing ones near p_7(0) g_i.
  const std::size_t k8 = 2;
  for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(r.corrected[k8][i] - 1.0) <= 0.1);
  for (std::size_t i = 8; i < 12; ++i)
    if (r.eigenvalues[i] <= lambda) CHECK(std::abs(r.corrected[k8][i] - r.p_at_zero[k8] * r.g[i]) <= 0.1);
}

TEST_CASE("filter factors at lambda = 0 are all one") {
  const problems::TestProblem p = problems::generate("gravity", 12);
  const analysis::FilterFactorReport r = analysis::filter_factors(p.a, p.b_exact, 0.0, {3, 6});
  for (double g : r.g) CHECK(g == 1.0);
  for (const Vector& f : r.corrected)
    for (double v : f) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.p_at_zero[0] == 1.0);
}

TEST_CASE("filter factor errors and CSV") {
  const problems::TestProblem baart = problems::generate("baart", 12);
  CHECK_THROWS_AS(analysis::filter_factors(baart.a, baart.b_exact, 0.1, {4}), NotApplicable);
  const problems::TestProblem p = problems::generate("gravity", 12);
  CHECK_THROWS_AS(analysis::filter_factors(p.a, p.b_exact, 0.1, {0}), InvalidArgument);
  CHECK_THROWS_AS(analysis::filter_factors(p.a, p.b_exact, -1.0, {4}), InvalidArgument);

  const analysis::FilterFactorReport r = analysis::filter_factors(p.a, p.b_exact, 0.1, {2, 5});
  std::ostringstream os;
  analysis::write_filter_csv(r, os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "i,eigenvalue,g_i,f_i_m2,f_i_m5");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 12);
}

TEST_CASE("error bound") {
  const auto id = krylov::arnoldi_mgs(krylov::dense_operator(DenseMatrix::identity(4)), Vector(4, 1.0), 3);
  const analysis::ErrorBoundReport r = analysis::error_bound(id, DenseMatrix::identity(4), 1.0, 1.0);
  CHECK(r.a == doctest::Approx(1.0));
  CHECK(r.symmetric);
  CHECK(r.k_selected == 1.0);
  CHECK(r.log10_bound[0] == doctest::Approx(0.0));
  CHECK(r.log10_bound_low[0] == doctest::Approx(std::log10(2.0)));
  CHECK(r.log10_bound_high[0] == doctest::Approx(std::log10(11.08)));

  const DenseMatrix ns(2, 2, {2, 1, 0, 3});
  const auto dn = krylov::arnoldi_mgs(krylov::dense_operator(ns), {1.0, 1.0}, 2);
  const analysis::ErrorBoundReport rn = analysis::error_bound(dn, ns, 0.5, 2.0);
  CHECK_FALSE(rn.symmetric);
  CHECK(rn.k_selected == 2.0);
  // lambda_min of [[2, .5], [.5, 3]] = (5 - sqrt 2) / 2
  CHECK(rn.a == doctest::Approx((5.0 - std::sqrt(2.0)) / 2.0));

  const DenseMatrix indef = DenseMatrix::diagonal({1.0, -1.0});
  const auto di = krylov::arnoldi_mgs(krylov::dense_operator(indef), {1.0, 1.0}, 1);
  CHECK_THROWS_AS(analysis::error_bound(di, indef, 1.0, 1.0), NotApplicable);
}

TEST_CASE("decay diagnostic") {
  CHECK_FALSE(analysis::decay_diagnostic(with_subdiagonal(Vector(10, 0.3))).superlinear);
  Vector fast(10);
  for (std::size_t i = 0; i < 10; ++i) fast[i] = std::pow(10.0, -static_cast<double>(i + 1));
  const analysis::DecayReport r = analysis::decay_diagnostic(with_subdiagonal(fast));
  CHECK(r.superlinear);
  CHECK(r.slope == doctest::Approx(-1.0));
  CHECK(r.rows[2].log10_product == doctest::Approx(-6.0));
  CHECK_THROWS_AS(analysis::decay_diagnostic(with_subdiagonal({0.1, 0.1})), InvalidArgument);

  const problems::TestProblem shaw = problems::generate("shaw", 160);
  const Vector xbar = la::lu_solve(la::lu_factor(la::shifted(shaw.a, 1e-5)), shaw.b_exact);
  const auto d = krylov::arnoldi_mgs(krylov::dense_operator(shaw.a), xbar, 20);
  CHECK(analysis::decay_diagnostic(d).superlinear);
}

TEST_CASE("lambda balance") {
  // SPD diagonal: kappa(A + lambda I) = kappa((A + lambda I)^{-1} A) at sqrt(l1 lN).
  const analysis::LambdaBalance d = analysis::lambda_balance(DenseMatrix::diagonal({1.0, 1e-8}));
  CHECK(d.bracketed);
  CHECK(d.lambda_star >= 1e-4 / 3.0);
  CHECK(d.lambda_star <= 3e-4);
  CHECK(d.kappa == doctest::Approx(1e8).epsilon(0.01));

  const DenseMatrix s = la::shifted(problems::generate("gravity", 24).a, 1e-3);
  const la::SymEigen e = la::eig_sym_jacobi(s);
  const double ideal = std::sqrt(e.values.front() * e.values.back());
  const analysis::LambdaBalance g = analysis::lambda_balance(s);
  CHECK(g.bracketed);
  CHECK(g.lambda_star == doctest::Approx(ideal).epsilon(0.5));
  const double sqrt_kappa = std::sqrt(e.values.front() / e.values.back());
  CHECK(la::cond2_estimate(la::shifted(s, ideal)).kappa == doctest::Approx(sqrt_kappa).epsilon(0.05));

  const analysis::LambdaBalance id = analysis::lambda_balance(DenseMatrix::identity(5));
  CHECK_FALSE(id.bracketed);
  CHECK(id.lambda_star == doctest::Approx(id.lambda_inv_sqrt_kappa));
}
