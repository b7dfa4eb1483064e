// Experiment driver. One subcommand per figure or table; see README.md.

#include <CLI11.hpp>
#include <exception>
#include <iostream>

#include "aspatp/experiments.hpp"

namespace {

struct Flags {
  std::string problem;
  std::size_t size = 0;
  std::vector<double> lambdas;
  double delta = 0.0;
  std::uint64_t seed = 1;
  std::size_t m_max = 0;
  std::string reg;
  std::string out = "out";
  std::vector<std::size_t> m_list;
  std::size_t q = 6;
  double sigma = 1.5;
  std::string image;
};

// Options whose absence selects a per-subcommand default.
struct Given {
  std::vector<CLI::Option*> problem, size, delta, m_max, reg, image;
  static bool any(const std::vector<CLI::Option*>& v) {
    for (const CLI::Option* o : v)
      if (o->count() > 0) return true;
    return false;
  }
};

void add_common(CLI::App* sub, Flags& f, Given& g) {
  g.problem.push_back(sub->add_option("--problem", f.problem, "baart | shaw | foxgood | gravity"));
  g.size.push_back(sub->add_option("--size", f.size, "problem size N (image side for deblur)"));
  sub->add_option("--lambda", f.lambdas, "regularization parameter, repeatable")->take_all();
  g.delta.push_back(sub->add_option("--delta", f.delta, "relative noise level"));
  sub->add_option("--seed", f.seed, "noise seed");
  g.m_max.push_back(sub->add_option("--m-max", f.m_max, "maximum Arnoldi steps"));
  g.reg.push_back(sub->add_option("--reg", f.reg, "identity | d2 | grad2d | lap2d"));
  sub->add_option("--out", f.out, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ASP/ATP regularization experiments"};
  app.require_subcommand(1);
  Flags flags;
  Given given;
  const std::vector<std::pair<const char*, const char*>> subs = {
      {"asp-sweep", "ASP error curves over lambda plus a GMRES baseline"},
      {"atp", "ATP on noisy data with a regularization operator"},
      {"cost", "flop cost of ASP against preconditioned GMRES"},
      {"lambda-accuracy", "best ASP error over a lambda grid for each problem"},
      {"filters", "Tikhonov and ASP filter factors"},
      {"deblur", "ATP image deblurring"},
      {"gallery", "export test problems as text matrices"},
  };
  for (const auto& [name, help] : subs) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, flags, given);
    if (std::string(name) == "filters") sub->add_option("--m", flags.m_list, "iteration counts, repeatable")->take_all();
    if (std::string(name) == "deblur") {
      sub->add_option("--q", flags.q, "half-bandwidth of the Toeplitz factor");
      sub->add_option("--sigma", flags.sigma, "PSF width in pixels");
      given.image.push_back(sub->add_option("--image", flags.image, "square PGM input instead of the synthetic pattern"));
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  aspatp::cli::ExperimentConfig cfg;
  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (Given::any(given.problem)) cfg.problem = flags.problem;
  if (Given::any(given.size)) cfg.size = flags.size;
  cfg.lambdas = flags.lambdas;
  if (Given::any(given.delta)) cfg.delta = flags.delta;
  cfg.seed = flags.seed;
  if (Given::any(given.m_max)) cfg.m_max = flags.m_max;
  if (Given::any(given.reg)) cfg.reg = flags.reg;
  cfg.out = flags.out;
  cfg.m_list = flags.m_list;
  cfg.q = flags.q;
  cfg.sigma = flags.sigma;
  if (Given::any(given.image)) cfg.image = flags.image;

  try {
    const auto files = aspatp::cli::run(cfg);
    std::cout << "wrote " << files.size() << " files to " << cfg.out << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
