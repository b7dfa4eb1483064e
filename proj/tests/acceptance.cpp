// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "aspatp/analysis.hpp"
#include "aspatp/errors.hpp"
#include "aspatp/imaging.hpp"
#include "aspatp/solvers.hpp"
#include "oracles.hpp"

using namespace aspatp;
using la::DenseMatrix;
using la::Vector;
using solvers::SolverTrace;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED[" << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " exception: " << e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) {
    o.pass = false;
    o.detail << " FAILED[runtime " << secs << " s > " << limit_s << " s]";
  }
  if (!o.pass) ++failures;
  char time_buf[32];
  std::snprintf(time_buf, sizeof time_buf, "%.2f", secs);
  std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << id << ": " << title << " |" << o.detail.str()
            << " (" << time_buf << " s)" << std::endl;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double max_abs(const DenseMatrix& a) { return a.max_abs(); }

double median(Vector v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Vector asp_seed(const DenseMatrix& a, const Vector& b, double lambda) {
  return la::lu_solve(la::lu_factor(la::shifted(a, lambda)), b);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& env, const std::string& args) {
  const std::string cmd = env + " " + std::string(ASPATP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

int main() {
  criterion(1, "LU/Cholesky reconstruction on 200 random matrices; Jacobi vs QL oracle on GRAVITY(12)", 10.0,
            [](Outcome& o) {
              std::mt19937_64 sizes(2024);
              double lu_worst = 0.0, chol_worst = 0.0;
              for (std::uint64_t k = 0; k < 200; ++k) {
                const std::size_t n = 1 + sizes() % 200;
                const DenseMatrix a = oracle::random_matrix(n, n, 1000 + k);
                const la::LuFactors f = la::lu_factor(a);
                DenseMatrix l = DenseMatrix::identity(n), u(n, n), pa(n, n);
                for (std::size_t i = 0; i < n; ++i)
                  for (std::size_t j = 0; j < n; ++j) {
                    (j < i ? l(i, j) : u(i, j)) = f.lu(i, j);
                    pa(i, j) = a(f.perm[i], j);
                  }
                lu_worst = std::max(lu_worst, max_abs(la::add(pa, la::serial::matmul(l, u), -1.0)) / max_abs(a));

                const DenseMatrix s = la::shifted(la::serial::gram(a), static_cast<double>(n));
                const la::CholeskyFactor c = la::cholesky_factor(s);
                chol_worst = std::max(
                    chol_worst, max_abs(la::add(s, la::serial::matmul(c.l, c.l.transposed()), -1.0)) / max_abs(s));
              }
              const DenseMatrix g = problems::generate("gravity", 12).a;
              const Vector jac = la::eig_sym_jacobi(g).values;
              const Vector ref = oracle::qr_eigenvalues(g);
              double eig_worst = 0.0;
              for (std::size_t i = 0; i < 12; ++i) eig_worst = std::max(eig_worst, std::abs(jac[i] - ref[i]) / std::abs(ref[i]));
              o.detail << " lu " << sci(lu_worst) << ", cholesky " << sci(chol_worst) << ", eig " << sci(eig_worst);
              o.require(lu_worst <= 1e-10, "lu");
              o.require(chol_worst <= 1e-10, "cholesky");
              o.require(eig_worst <= 1e-10, "eigenvalues");
            });

  criterion(2, "Arnoldi relation, MGS and Householder, four problems at N=160, m=25", 5.0, [](Outcome& o) {
    for (const char* name : {"baart", "shaw", "foxgood", "gravity"}) {
      const problems::TestProblem p = problems::generate(name, 160);
      const auto op = krylov::dense_operator(p.a);
      for (const auto& d : {krylov::arnoldi_mgs(op, p.b_exact, 25), krylov::arnoldi_householder(op, p.b_exact, 25)}) {
        const double rel = krylov::arnoldi_residual(p.a, d) / p.a.frobenius();
        const char* kind = d.method == krylov::Orthogonalization::MGS ? "mgs" : "hh";
        o.detail << " " << name << "/" << kind << " m=" << d.m << " " << sci(rel);
        o.require(rel <= 1e-10, std::string(name) + "/" + kind);
      }
    }
  });

  const problems::TestProblem baart = problems::generate("baart", 240);

  criterion(3, "ASP on noise-free BAART(240): min error <= 1e-3 at m <= 15 for each lambda", 30.0,
            [&](Outcome& o) {
              for (double lambda : {1e-3, 1e-5, 1e-7, 1e-9}) {
                const auto [e, m] = solvers::asp_solve(baart, {lambda, 30, true}).min_error();
                o.detail << " lambda=" << sci(lambda) << ": " << sci(e) << " (" << m << ")";
                o.require(e <= 1e-3 && m <= 15, "lambda " + sci(lambda));
              }
            });

  criterion(4, "ASP stagnates (final <= 10x min), Householder GMRES diverges (final >= 100x min), BAART(240)", 30.0,
            [&](Outcome& o) {
              for (double lambda : {1e-3, 1e-5, 1e-7, 1e-9}) {
                const SolverTrace t = solvers::asp_solve(baart, {lambda, 30, true});
                const double ratio = t.final_error() / t.min_error().first;
                o.detail << " asp " << sci(lambda) << ": " << sci(ratio) << " (last m=" << t.rows.back().m << ", "
                         << solvers::stop_reason_name(t.stop) << ")";
                o.require(ratio <= 10.0, "asp " + sci(lambda));
              }
              const SolverTrace g = solvers::gmres(krylov::dense_operator(baart.a), baart.b_exact, 30, baart.x_exact);
              const double ratio = g.final_error() / g.min_error().first;
              o.detail << " gmres: " << sci(ratio) << " (last m=" << g.rows.back().m << ")";
              o.require(ratio >= 100.0, "gmres");
            });

  criterion(5, "ATP on BAART(240), delta=1e-3, d2: median min error <= 6e-2 at m <= 10 (lambda=1e10); lambda=1 never worse than 2x its first iterate",
            180.0, [&](Outcome& o) {
              const solvers::AtpSetup setup = solvers::prepare_atp(baart.a);
              Vector mins;
              std::size_t worst_m = 0;
              double worst_growth = 0.0;
              for (std::uint64_t seed = 1; seed <= 10; ++seed) {
                const Vector b = problems::add_noise(baart.b_exact, {1e-3, seed});
                solvers::AtpConfig cfg;
                cfg.reg = {problems::RegKind::SecondDerivative1D, 0};
                cfg.lambda = 1e10;
                const auto [e, m] = solvers::atp_solve(setup, b, baart.x_exact, cfg).min_error();
                mins.push_back(e);
                worst_m = std::max(worst_m, m);
                cfg.lambda = 1.0;
                const SolverTrace mild = solvers::atp_solve(setup, b, baart.x_exact, cfg);
                const double first = *mild.rows.front().rel_error;
                for (const auto& r : mild.rows) worst_growth = std::max(worst_growth, *r.rel_error / first);
                worst_growth = std::max(worst_growth, mild.final_error() / first);
              }
              const double med = median(mins);
              o.detail << " median min " << sci(med) << ", worst argmin " << worst_m << ", lambda=1 worst growth "
                       << sci(worst_growth);
              o.require(med <= 6e-2, "median");
              o.require(worst_m <= 10, "argmin");
              o.require(worst_growth <= 2.0, "deterioration");
            });

  criterion(6, "lambda plateau: min error varies <= 10x over [1/sqrt(kappa), 1/kappa^(1/4)], four problems, N=160",
            120.0, [](Outcome& o) {
              for (const char* name : {"baart", "shaw", "foxgood", "gravity"}) {
                const problems::TestProblem p = problems::generate(name, 160);
                const double kappa = la::cond2_estimate(p.a).kappa;
                const double lo = -0.5 * std::log10(kappa), hi = -0.25 * std::log10(kappa);
                Vector errs;
                for (int k = 0; k <= 8; ++k) {
                  const double lambda = std::pow(10.0, lo + (hi - lo) * k / 8.0);
                  errs.push_back(solvers::asp_solve(p, {lambda, 30, true}).min_error().first);
                }
                const double spread = *std::max_element(errs.begin(), errs.end()) /
                                      *std::min_element(errs.begin(), errs.end());
                o.detail << " " << name << " " << sci(spread);
                o.require(spread <= 10.0, name);
              }
            });

  criterion(7, "filter factors on GRAVITY(12), lambda=1/sqrt(kappa)", 5.0, [](Outcome& o) {
    const problems::TestProblem p = problems::generate("gravity", 12);
    const double lambda = 1.0 / std::sqrt(la::cond2_estimate(p.a).kappa);
    const auto r = analysis::filter_factors(p.a, p.b_exact, lambda, {8, 12});
    double full = 0.0, lead = 0.0, trail = 0.0;
    int trailing = 0;
    for (std::size_t i = 0; i < 12; ++i) full = std::max(full, std::abs(r.corrected[1][i] - 1.0));
    for (std::size_t i = 0; i < 6; ++i) lead = std::max(lead, std::abs(r.corrected[0][i] - 1.0));
    for (std::size_t i = 8; i < 12; ++i) {
      if (r.eigenvalues[i] > lambda) continue;
      ++trailing;
      trail = std::max(trail, std::abs(r.corrected[0][i] - r.p_at_zero[0] * r.g[i]));
    }
    o.detail << " m=N dev " << sci(full) << ", m=8 leading dev " << sci(lead) << ", " << trailing
             << " trailing dev " << sci(trail);
    o.require(full <= 1e-8, "m=N");
    o.require(lead <= 0.1, "leading");
    o.require(trailing > 0 && trail <= 0.1, "trailing");
  });

  criterion(8, "superlinear decay of prod h on SHAW(160) and GRAVITY(160), m=20", 10.0, [](Outcome& o) {
    for (const char* name : {"shaw", "gravity"}) {
      const problems::TestProblem p = problems::generate(name, 160);
      const auto d = krylov::arnoldi_mgs(krylov::dense_operator(p.a), asp_seed(p.a, p.b_exact, 1e-5), 20);
      const analysis::DecayReport r = analysis::decay_diagnostic(d);
      o.detail << " " << name << " m=" << d.m << " slope " << sci(r.slope);
      o.require(r.superlinear, name);
    }
  });

  criterion(9, "error bound (K=1) dominates measured |E_m| on GRAVITY(40)", 10.0, [](Outcome& o) {
    const problems::TestProblem p = problems::generate("gravity", 40);
    const la::SymEigen e = la::eig_sym_jacobi(p.a);
    const double a_min = e.values.back();
    o.detail << " a=" << sci(a_min);
    if (!(a_min > 0.0)) {
      o.require(false, "a <= 0");
      return;
    }
    const double lambda = 1e-3;
    const Vector xbar = asp_seed(p.a, p.b_exact, lambda);
    // f(A) xbar through the eigendecomposition, independent of the Krylov path.
    Vector coef = la::matvec_transposed(e.vectors, xbar);
    for (std::size_t i = 0; i < coef.size(); ++i) coef[i] *= 1.0 + lambda / e.values[i];
    const Vector fx = la::matvec(e.vectors, coef);

    const auto d = krylov::arnoldi_mgs(krylov::dense_operator(p.a), xbar, 25);
    const auto bound = analysis::error_bound(d, p.a, lambda, la::norm2(xbar));
    o.require(bound.k_selected == 1.0, "K=1");
    std::size_t checked = 0;
    double tightest = -1e300;
    for (std::size_t m = 1; m <= d.m; ++m) {
      Vector y;
      try {
        y = solvers::eval_f_on_hessenberg(d.square(m), lambda, 40 * std::numeric_limits<double>::epsilon());
      } catch (const SingularToWorkingPrecision&) {
        break;
      }
      Vector xm(40, 0.0);
      for (std::size_t k = 0; k < m; ++k) la::axpy(y[k], d.basis[k], xm);
      la::scale(la::norm2(xbar), xm);
      const double measured = la::norm2(la::subtract(fx, xm));
      const double b = bound.log10_bound[m];
      if (b < -300.0) continue;
      ++checked;
      tightest = std::max(tightest, std::log10(measured) - b);
      o.require(std::log10(measured) <= b, "m=" + std::to_string(m));
    }
    o.detail << ", " << checked << " steps checked, max log10(measured/bound) " << sci(tightest);
    o.require(checked >= 3, "coverage");
  });

  criterion(10, "deblurring 32x32, q=6, sigma=1.5, delta=1e-3, lap2d: error <= 0.2 at lambda=1e2, spread <= 2x over {1,1e2,1e4}",
            180.0, [](Outcome& o) {
              const imaging::GrayImage img = imaging::coins_pattern(32);
              const imaging::BlurSpec spec{32, 6, 1.5};
              const solvers::AtpSetup setup = solvers::prepare_atp(imaging::blur_matrix(spec));
              Vector errs;
              for (double lambda : {1.0, 1e2, 1e4}) {
                const auto r = imaging::deblur_atp(setup, img, spec, {1e-3, 1}, problems::RegKind::Laplacian2D, lambda, 60);
                errs.push_back(r.rel_error);
                o.detail << " lambda=" << sci(lambda) << ": " << sci(r.rel_error);
              }
              o.require(errs[1] <= 0.2, "lambda=1e2");
              o.require(*std::max_element(errs.begin(), errs.end()) <= 2.0 * *std::min_element(errs.begin(), errs.end()),
                        "spread");
            });

  criterion(11, "per-iteration flop increment of PGMRES exceeds ASP's on BAART(240), lambda=1e-5", 30.0,
            [&](Outcome& o) {
              const SolverTrace asp = solvers::asp_solve(baart, {1e-5, 30, true});
              const SolverTrace pg = solvers::pgmres(baart.a, baart.b_exact, 1e-5, 30, baart.x_exact);
              const std::size_t common = std::min(asp.rows.size(), pg.rows.size());
              double worst = 1e300;
              for (std::size_t k = 1; k < common; ++k) {
                const double da = asp.rows[k].flops - asp.rows[k - 1].flops;
                const double dp = pg.rows[k].flops - pg.rows[k - 1].flops;
                worst = std::min(worst, dp / da);
                o.require(dp > da, "m=" + std::to_string(k + 1));
              }
              o.detail << " " << common - 1 << " increments compared, min PGMRES/ASP ratio " << sci(worst);
              o.require(common >= 2, "coverage");
            });

  criterion(12, "CLI determinism: every subcommand twice (default threads, then one thread) gives identical files", 300.0,
            [](Outcome& o) {
              const fs::path root = fs::temp_directory_path() / "aspatp_acceptance_determinism";
              fs::remove_all(root);
              const std::vector<std::string> subs = {"asp-sweep", "atp",     "cost",   "lambda-accuracy",
                                                     "filters",   "deblur",  "gallery"};
              for (const std::string& sub : subs) {
                const fs::path a = root / sub / "a", b = root / sub / "b";
                const int ra = run_cli("", sub + " --out " + a.string());
                const int rb = run_cli("OMP_NUM_THREADS=1", sub + " --out " + b.string());
                o.require(ra == 0 && rb == 0, sub + " exit");
                std::size_t files = 0;
                bool same = fs::exists(a);
                if (same) {
                  for (const auto& entry : fs::directory_iterator(a)) {
                    ++files;
                    const fs::path other = b / entry.path().filename();
                    if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) same = false;
                  }
                }
                o.detail << " " << sub << ":" << files;
                o.require(same && files > 0, sub);
              }
              fs::remove_all(root);
            });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
