#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "aspatp/errors.hpp"
#include "aspatp/problems.hpp"

namespace aspatp::problems {

namespace {

using std::numbers::pi;

// Midpoint collocation of  int K(s, t) x(t) dt  with s and t on their own
// midpoint grids, quadrature weight h = (t1 - t0) / N.
TestProblem midpoint(std::string name, std::size_t n, double s0, double s1, double t0, double t1,
                     const std::function<double(double, double)>& kernel, const std::function<double(double)>& x) {
  TestProblem p;
  p.name = std::move(name);
  p.n = n;
  p.a = DenseMatrix(n, n);
  p.x_exact.resize(n);
  const double hs = (s1 - s0) / static_cast<double>(n);
  const double ht = (t1 - t0) / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) p.x_exact[j] = x(t0 + (static_cast<double>(j) + 0.5) * ht);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = s0 + (static_cast<double>(i) + 0.5) * hs;
    for (std::size_t j = 0; j < n; ++j) {
      const double t = t0 + (static_cast<double>(j) + 0.5) * ht;
      p.a(i, j) = ht * kernel(s, t);
    }
  }
  p.b_exact = la::matvec(p.a, p.x_exact);
  return p;
}

}  // namespace

bool is_gallery_name(std::string_view name) {
  return name == "baart" || name == "shaw" || name == "foxgood" || name == "gravity";
}

TestProblem generate(std::string_view name, std::size_t n, const ProblemParams& params) {
  if (n < 8) throw InvalidArgument("generate: N must be at least 8, got " + std::to_string(n));

  if (name == "baart") {
    return midpoint("baart", n, 0.0, pi / 2, 0.0, pi,
                    [](double s, double t) { return std::exp(s * std::cos(t)); },
                    [](double t) { return std::sin(t); });
  }
  if (name == "shaw") {
    return midpoint(
        "shaw", n, -pi / 2, pi / 2, -pi / 2, pi / 2,
        [](double s, double t) {
          const double c = std::cos(s) + std::cos(t);
          const double u = pi * (std::sin(s) + std::sin(t));
          const double sinc = u == 0.0 ? 1.0 : std::sin(u) / u;
          return c * c * sinc * sinc;
        },
        [](double t) { return 2.0 * std::exp(-6.0 * (t - 0.8) * (t - 0.8)) + std::exp(-2.0 * (t + 0.5) * (t + 0.5)); });
  }
  if (name == "foxgood") {
    return midpoint("foxgood", n, 0.0, 1.0, 0.0, 1.0,
                    [](double s, double t) { return std::sqrt(s * s + t * t); },
                    [](double t) { return t; });
  }
  if (name == "gravity") {
    const double d = params.gravity_depth;
    if (!(d > 0.0)) throw InvalidArgument("generate: gravity depth must be positive");
    return midpoint(
        "gravity", n, 0.0, 1.0, 0.0, 1.0,
        [d](double s, double t) { return d * std::pow(d * d + (s - t) * (s - t), -1.5); },
        [](double t) { return std::sin(pi * t) + 0.5 * std::sin(2.0 * pi * t); });
  }
  throw InvalidArgument("generate: unknown problem '" + std::string(name) + "'");
}

}  // namespace aspatp::problems
