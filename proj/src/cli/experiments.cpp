#include <cmath>
#include <exception>
#include <functional>
#include <iostream>
#include <sstream>

#include "aspatp/analysis.hpp"
#include "aspatp/errors.hpp"
#include "aspatp/experiments.hpp"
#include "aspatp/imaging.hpp"
#include "aspatp/problems.hpp"
#include "aspatp/solvers.hpp"

namespace aspatp::cli {

namespace {

using la::Vector;
using problems::TestProblem;
using solvers::SolverTrace;

const std::vector<std::string> kGallery = {"baart", "foxgood", "shaw", "gravity"};
const std::vector<std::string> kSubcommands = {"asp-sweep", "atp",     "cost",   "lambda-accuracy",
                                               "filters",   "deblur",  "gallery"};

// Runs body(i) for i < n on the OpenMP team. Each cell owns its output slot;
// the first exception (by cell index) is rethrown after the join.
void parallel_cells(std::size_t n, const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> errors(n);
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void write_trace(const ExperimentConfig& cfg, const std::string& name, const SolverTrace& t,
                 std::vector<std::string>& written) {
  CsvFile f(cfg, name, written);
  solvers::write_trace_csv(t, f.stream());
  f.close();
}

std::vector<std::string> problem_list(const ExperimentConfig& cfg) {
  return cfg.problem ? std::vector<std::string>{*cfg.problem} : kGallery;
}

TestProblem with_data(const TestProblem& p, const ExperimentConfig& cfg) {
  TestProblem q = p;
  q.b_exact = problems::add_noise(p.b_exact, {*cfg.delta, cfg.seed});
  return q;
}

struct SummaryRow {
  std::string method;
  double lambda = 0.0;
  const SolverTrace* trace = nullptr;
};

void write_summary(const ExperimentConfig& cfg, const std::vector<SummaryRow>& rows,
                   std::optional<double> noise_norm, std::vector<std::string>& written) {
  CsvFile f(cfg, "summary.csv", written);
  f << "method,lambda,min_error,argmin_m,final_m,final_error,final_residual,stop_reason";
  if (noise_norm) f << ",discrepancy_m";
  f << '\n';
  for (const SummaryRow& r : rows) {
    const SolverTrace& t = *r.trace;
    if (t.rows.empty()) {
      f << r.method << ',' << fmt(r.lambda) << ",,,0,,," << solvers::stop_reason_name(t.stop);
      if (noise_norm) f << ',';
      f << '\n';
      continue;
    }
    const auto [emin, at] = t.min_error();
    f << r.method << ',' << fmt(r.lambda) << ',' << fmt(emin) << ',' << at << ',' << t.rows.back().m << ','
      << fmt(t.final_error()) << ',' << fmt(t.rows.back().residual) << ',' << solvers::stop_reason_name(t.stop);
    if (noise_norm) f << ',' << solvers::discrepancy_stop(t, *noise_norm).m;
    f << '\n';
  }
  f.close();
}

std::string join(const std::vector<double>& v) {
  if (v.empty()) return "auto";
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + fmt(v[i]);
  return s;
}

}  // namespace

ExperimentConfig resolve(const ExperimentConfig& raw) {
  ExperimentConfig c = raw;
  const std::string& sub = c.subcommand;
  if (std::find(kSubcommands.begin(), kSubcommands.end(), sub) == kSubcommands.end()) {
    throw InvalidArgument("unknown subcommand '" + sub + "'");
  }
  if (c.problem && !problems::is_gallery_name(*c.problem)) {
    throw InvalidArgument("unknown problem '" + *c.problem + "' (expected baart, shaw, foxgood or gravity)");
  }
  if (c.reg) problems::parse_reg_kind(*c.reg);

  if (sub == "asp-sweep") {
    if (!c.problem) c.problem = "baart";
    if (!c.size) c.size = 240;
    if (c.lambdas.empty()) c.lambdas = {1e-3, 1e-5, 1e-7, 1e-9};
    if (!c.delta) c.delta = 0.0;
    if (!c.m_max) c.m_max = 30;
  } else if (sub == "atp") {
    if (!c.problem) c.problem = "baart";
    if (!c.size) c.size = 240;
    if (c.lambdas.empty()) c.lambdas = {1.0, 1e10};
    if (!c.delta) c.delta = 1e-3;
    if (!c.m_max) c.m_max = 30;
    if (!c.reg) c.reg = "d2";
  } else if (sub == "cost") {
    if (!c.problem) c.problem = "baart";
    if (!c.size) c.size = 240;
    if (c.lambdas.empty()) c.lambdas = {1e-5};
    if (!c.delta) c.delta = 0.0;
    if (!c.m_max) c.m_max = 30;
  } else if (sub == "lambda-accuracy") {
    if (!c.size) c.size = 160;
    if (c.lambdas.empty())
      for (int k = -28; k <= 0; ++k) c.lambdas.push_back(std::pow(10.0, 0.5 * k));
    if (!c.delta) c.delta = 0.0;
    if (!c.m_max) c.m_max = 30;
  } else if (sub == "filters") {
    if (!c.problem) c.problem = "gravity";
    if (!c.size) c.size = 12;
    if (c.m_list.empty()) c.m_list = {4, 6, 8, 10};
    if (!c.delta) c.delta = 0.0;
  } else if (sub == "deblur") {
    if (!c.size) c.size = 32;
    if (c.lambdas.empty()) c.lambdas = {1.0, 1e2, 1e4, 1e6};
    if (!c.delta) c.delta = 1e-3;
    if (!c.m_max) c.m_max = 60;
  } else if (sub == "gallery") {
    if (!c.size) c.size = 160;
  }

  if (c.size && *c.size < 8) throw InvalidArgument("--size must be at least 8");
  for (double l : c.lambdas)
    if (!(l > 0.0) || !std::isfinite(l)) throw InvalidArgument("--lambda values must be positive and finite");
  if (c.delta && !(*c.delta >= 0.0 && std::isfinite(*c.delta))) throw InvalidArgument("--delta must be non-negative");
  if (c.m_max && *c.m_max == 0) throw InvalidArgument("--m-max must be at least 1");
  for (std::size_t m : c.m_list)
    if (m == 0 || (c.size && m > *c.size)) throw InvalidArgument("--m values must lie in [1, size]");
  if (sub == "deblur") {
    if (*c.size * *c.size > 4096) throw InvalidArgument("deblur: --size above 64 exceeds the dense ATP path");
    if (c.q < 1 || c.q > *c.size) throw InvalidArgument("deblur: --q must lie in [1, size]");
    if (!(c.sigma > 0.0)) throw InvalidArgument("deblur: --sigma must be positive");
  }
  if (c.out.empty()) throw InvalidArgument("--out must not be empty");
  return c;
}

std::string config_comment(const ExperimentConfig& c) {
  std::ostringstream s;
  s << "# aspatp " << kVersion << " subcommand=" << c.subcommand << " problem=" << c.problem.value_or("all")
    << " size=" << (c.size ? std::to_string(*c.size) : "auto") << " lambdas=" << join(c.lambdas)
    << " delta=" << (c.delta ? fmt(*c.delta) : "0") << " seed=" << c.seed
    << " m_max=" << (c.m_max ? std::to_string(*c.m_max) : "auto") << " reg=" << c.reg.value_or("auto");
  if (c.subcommand == "filters") {
    s << " m=";
    for (std::size_t i = 0; i < c.m_list.size(); ++i) s << (i ? ";" : "") << c.m_list[i];
  }
  if (c.subcommand == "deblur") {
    s << " q=" << c.q << " sigma=" << fmt(c.sigma) << " image=" << c.image.value_or("coins");
  }
  return s.str();
}

std::vector<std::string> run_asp_sweep(const ExperimentConfig& cfg) {
  ensure_output_dir(cfg.out);
  std::vector<std::string> written;
  const TestProblem p = with_data(problems::generate(*cfg.problem, *cfg.size), cfg);

  std::vector<SolverTrace> traces(cfg.lambdas.size() + 1);
  parallel_cells(traces.size(), [&](std::size_t i) {
    if (i < cfg.lambdas.size()) {
      traces[i] = solvers::asp_solve(p, {cfg.lambdas[i], *cfg.m_max, true});
    } else {
      traces[i] = solvers::gmres(krylov::dense_operator(p.a), p.b_exact, *cfg.m_max, p.x_exact);
    }
  });

  std::vector<SummaryRow> rows;
  for (std::size_t i = 0; i < cfg.lambdas.size(); ++i) {
    write_trace(cfg, "asp_lambda_" + lambda_tag(cfg.lambdas[i]) + ".csv", traces[i], written);
    rows.push_back({"asp", cfg.lambdas[i], &traces[i]});
  }
  write_trace(cfg, "gmres.csv", traces.back(), written);
  rows.push_back({"gmres", 0.0, &traces.back()});
  write_summary(cfg, rows, std::nullopt, written);
  return written;
}

std::vector<std::string> run_atp_experiment(const ExperimentConfig& cfg) {
  ensure_output_dir(cfg.out);
  std::vector<std::string> written;
  if (*cfg.delta == 0.0) {
    std::cerr << "warning: atp with --delta 0; the method targets noisy data\n";
  }
  const TestProblem exact = problems::generate(*cfg.problem, *cfg.size);
  const Vector b = problems::add_noise(exact.b_exact, {*cfg.delta, cfg.seed});
  const double noise_norm = la::norm2(la::subtract(b, exact.b_exact));
  const solvers::AtpSetup setup = solvers::prepare_atp(exact.a);
  const problems::RegKind reg = problems::parse_reg_kind(*cfg.reg);

  std::vector<SolverTrace> traces(cfg.lambdas.size() + 1);
  parallel_cells(traces.size(), [&](std::size_t i) {
    if (i < cfg.lambdas.size()) {
      solvers::AtpConfig ac;
      ac.lambda = cfg.lambdas[i];
      ac.reg = {reg, exact.n};
      ac.m_max = *cfg.m_max;
      traces[i] = solvers::atp_solve(setup, b, exact.x_exact, ac);
    } else {
      traces[i] = solvers::gmres(krylov::dense_operator(exact.a), b, *cfg.m_max, exact.x_exact);
    }
  });

  std::vector<SummaryRow> rows;
  for (std::size_t i = 0; i < cfg.lambdas.size(); ++i) {
    write_trace(cfg, "atp_lambda_" + lambda_tag(cfg.lambdas[i]) + ".csv", traces[i], written);
    rows.push_back({"atp", cfg.lambdas[i], &traces[i]});
  }
  write_trace(cfg, "gmres.csv", traces.back(), written);
  rows.push_back({"gmres", 0.0, &traces.back()});
  write_summary(cfg, rows, noise_norm, written);
  return written;
}

std::vector<std::string> run_cost_comparison(const ExperimentConfig& cfg) {
  ensure_output_dir(cfg.out);
  std::vector<std::string> written;
  const TestProblem p = with_data(problems::generate(*cfg.problem, *cfg.size), cfg);
  const double lambda = cfg.lambdas.front();
  const SolverTrace asp = solvers::asp_solve(p, {lambda, *cfg.m_max, true});
  const SolverTrace pg = solvers::pgmres(p.a, p.b_exact, lambda, *cfg.m_max, p.x_exact);
  write_trace(cfg, "asp.csv", asp, written);
  write_trace(cfg, "pgmres.csv", pg, written);

  CsvFile f(cfg, "cost.csv", written);
  f << "method,m,flops,flop_increment,rel_error\n";
  for (const auto& [name, t] : {std::pair<const char*, const SolverTrace*>{"asp", &asp}, {"pgmres", &pg}}) {
    double prev = 0.0;
    for (const solvers::TraceRow& r : t->rows) {
      f << name << ',' << r.m << ',' << fmt(r.flops) << ',' << (r.m > 1 ? fmt(r.flops - prev) : "") << ','
        << (r.rel_error ? fmt(*r.rel_error) : "") << '\n';
      prev = r.flops;
    }
  }
  f.close();
  return written;
}

std::vector<std::string> run_lambda_accuracy(const ExperimentConfig& cfg) {
  ensure_output_dir(cfg.out);
  std::vector<std::string> written;
  const std::vector<std::string> names = problem_list(cfg);
  std::vector<TestProblem> probs(names.size());
  std::vector<double> kappa(names.size());
  parallel_cells(names.size(), [&](std::size_t k) {
    probs[k] = with_data(problems::generate(names[k], *cfg.size), cfg);
    kappa[k] = la::cond2_estimate(probs[k].a).kappa;
  });

  const std::size_t nl = cfg.lambdas.size();
  std::vector<SolverTrace> traces(names.size() * nl);
  parallel_cells(traces.size(), [&](std::size_t c) {
    traces[c] = solvers::asp_solve(probs[c / nl], {cfg.lambdas[c % nl], *cfg.m_max, true});
  });

  CsvFile f(cfg, "lambda_accuracy.csv", written);
  f << "problem,lambda,kappa,in_plateau_range,min_error,argmin_m,final_error,stop_reason\n";
  for (std::size_t c = 0; c < traces.size(); ++c) {
    const std::size_t k = c / nl;
    const double lambda = cfg.lambdas[c % nl];
    const bool in_range = lambda >= 1.0 / std::sqrt(kappa[k]) && lambda <= 1.0 / std::sqrt(std::sqrt(kappa[k]));
    const SolverTrace& t = traces[c];
    f << names[k] << ',' << fmt(lambda) << ',' << fmt(kappa[k]) << ',' << (in_range ? 1 : 0) << ',';
    if (t.rows.empty()) {
      f << ",,," << solvers::stop_reason_name(t.stop) << '\n';
      continue;
    }
    const auto [emin, at] = t.min_error();
    f << fmt(emin) << ',' << at << ',' << fmt(t.final_error()) << ',' << solvers::stop_reason_name(t.stop) << '\n';
  }
  f.close();
  return written;
}

std::vector<std::string> run_filters(const ExperimentConfig& cfg) {
  ensure_output_dir(cfg.out);
  std::vector<std::string> written;
  const TestProblem p = with_data(problems::generate(*cfg.problem, *cfg.size), cfg);
  std::vector<double> lambdas = cfg.lambdas;
  if (lambdas.empty()) lambdas = {1.0 / std::sqrt(la::cond2_estimate(p.a).kappa)};

  for (double lambda : lambdas) {
    const analysis::FilterFactorReport r = analysis::filter_factors(p.a, p.b_exact, lambda, cfg.m_list);
    const std::string tag = lambda_tag(lambda);
    {
      CsvFile f(cfg, "filters_lambda_" + tag + ".csv", written);
      analysis::write_filter_csv(r, f.stream());
      f.close();
    }
    CsvFile f(cfg, "filters_poly_lambda_" + tag + ".csv", written);
    f << "m,lambda,p_at_zero,ritz_max,ritz_min\n";
    for (std::size_t k = 0; k < r.m_list.size(); ++k) {
      f << r.m_list[k] << ',' << fmt(lambda) << ',' << fmt(r.p_at_zero[k]) << ',' << fmt(r.ritz[k].front()) << ','
        << fmt(r.ritz[k].back()) << '\n';
    }
    f.close();
  }
  return written;
}

std::vector<std::string> run_deblur(const ExperimentConfig& cfg) {
  ensure_output_dir(cfg.out);
  std::vector<std::string> written;
  const imaging::GrayImage img = cfg.image ? imaging::read_pgm(*cfg.image) : imaging::coins_pattern(*cfg.size);
  const imaging::BlurSpec spec{img.n, cfg.q, cfg.sigma};
  if (img.n * img.n > 4096) throw InvalidArgument("deblur: image larger than 64x64 exceeds the dense ATP path");
  const std::vector<problems::RegKind> regs =
      cfg.reg ? std::vector<problems::RegKind>{problems::parse_reg_kind(*cfg.reg)}
              : std::vector<problems::RegKind>{problems::RegKind::GradientStack2D, problems::RegKind::Laplacian2D};
  const solvers::AtpSetup setup = solvers::prepare_atp(imaging::blur_matrix(spec));
  const problems::NoiseSpec noise{*cfg.delta, cfg.seed};

  const std::size_t nl = cfg.lambdas.size();
  std::vector<imaging::DeblurResult> results(regs.size() * nl);
  parallel_cells(results.size(), [&](std::size_t c) {
    results[c] = imaging::deblur_atp(setup, img, spec, noise, regs[c / nl], cfg.lambdas[c % nl], *cfg.m_max);
  });

  const Vector b = problems::add_noise(la::matvec(*setup.a, img.pixels), noise);
  const double observed_error = la::norm2(la::subtract(b, img.pixels)) / la::norm2(img.pixels);
  imaging::write_pgm(imaging::clamped(img), (std::filesystem::path(cfg.out) / "original.pgm").string());
  written.push_back("original.pgm");
  imaging::write_pgm(imaging::clamped(imaging::GrayImage{img.n, b}),
                     (std::filesystem::path(cfg.out) / "observed.pgm").string());
  written.push_back("observed.pgm");

  CsvFile f(cfg, "deblur_accuracy.csv", written);
  f << "reg,lambda,rel_error,abs_error,min_error,argmin_m,final_m,stop_reason,observed_rel_error\n";
  for (std::size_t c = 0; c < results.size(); ++c) {
    const imaging::DeblurResult& r = results[c];
    const std::string reg = problems::reg_kind_name(regs[c / nl]);
    const std::string tag = reg + "_lambda_" + lambda_tag(cfg.lambdas[c % nl]);
    const std::string pgm = "restored_" + tag + ".pgm";
    imaging::write_pgm(r.restored, (std::filesystem::path(cfg.out) / pgm).string());
    written.push_back(pgm);
    write_trace(cfg, "deblur_trace_" + tag + ".csv", r.trace, written);
    const std::size_t final_m = r.trace.rows.empty() ? 0 : r.trace.rows.back().m;
    const auto [emin, at] = r.trace.rows.empty() ? std::pair<double, std::size_t>{r.rel_error, 0} : r.trace.min_error();
    f << reg << ',' << fmt(cfg.lambdas[c % nl]) << ',' << fmt(r.rel_error) << ',' << fmt(r.abs_error) << ','
      << fmt(emin) << ',' << at << ',' << final_m << ',' << solvers::stop_reason_name(r.trace.stop) << ','
      << fmt(observed_error) << '\n';
  }
  f.close();
  return written;
}

std::vector<std::string> run_gallery(const ExperimentConfig& cfg) {
  ensure_output_dir(cfg.out);
  std::vector<std::string> written;
  CsvFile f(cfg, "gallery.csv", written);
  f << "problem,n,cond_estimate,asymmetry,consistency\n";
  for (const std::string& name : problem_list(cfg)) {
    const TestProblem p = problems::generate(name, *cfg.size);
    const auto path = [&](const char* what) { return name + "_" + what + ".txt"; };
    problems::write_matrix_file(p.a, (std::filesystem::path(cfg.out) / path("A")).string());
    problems::write_matrix_file(la::DenseMatrix(p.n, 1, p.b_exact), (std::filesystem::path(cfg.out) / path("b")).string());
    problems::write_matrix_file(la::DenseMatrix(p.n, 1, p.x_exact), (std::filesystem::path(cfg.out) / path("x")).string());
    for (const char* w : {"A", "b", "x"}) written.push_back(path(w));
    const double consistency =
        la::norm2(la::subtract(la::matvec(p.a, p.x_exact), p.b_exact)) / la::norm2(p.b_exact);
    f << name << ',' << p.n << ',' << fmt(la::cond2_estimate(p.a).kappa) << ',' << fmt(p.a.asymmetry()) << ','
      << fmt(consistency) << '\n';
  }
  f.close();
  return written;
}

std::vector<std::string> run(const ExperimentConfig& raw) {
  const ExperimentConfig cfg = resolve(raw);
  const std::string& s = cfg.subcommand;
  if (s == "asp-sweep") return run_asp_sweep(cfg);
  if (s == "atp") return run_atp_experiment(cfg);
  if (s == "cost") return run_cost_comparison(cfg);
  if (s == "lambda-accuracy") return run_lambda_accuracy(cfg);
  if (s == "filters") return run_filters(cfg);
  if (s == "deblur") return run_deblur(cfg);
  return run_gallery(cfg);
}

}  // namespace aspatp::cli
