#include <cmath>
#include <limits>
#include <numbers>

#include "aspatp/errors.hpp"
#include "aspatp/imaging.hpp"

namespace aspatp::imaging {

namespace {

void validate(const BlurSpec& s) {
  if (s.n == 0 || s.q < 1 || s.q > s.n) throw InvalidArgument("BlurSpec: need 1 <= q <= n");
  if (!(s.sigma > 0.0)) throw InvalidArgument("BlurSpec: sigma must be positive");
}

double psf_scale(const BlurSpec& s) { return 1.0 / (2.0 * std::numbers::pi * s.sigma * s.sigma); }

}  // namespace

DenseMatrix build_blur_factor(const BlurSpec& spec) {
  validate(spec);
  DenseMatrix t(spec.n, spec.n);
  for (std::size_t i = 0; i < spec.n; ++i)
    for (std::size_t j = 0; j < spec.n; ++j) {
      const std::size_t d = i > j ? i - j : j - i;
      if (d < spec.q) t(i, j) = std::exp(-static_cast<double>(d * d) / (2.0 * spec.sigma * spec.sigma));
    }
  return t;
}

krylov::LinearOperator blur_operator(const BlurSpec& spec) {
  auto t = std::make_shared<const DenseMatrix>(build_blur_factor(spec));
  const std::size_t n = spec.n;
  const double c = psf_scale(spec);
  const double nd = static_cast<double>(n);
  return krylov::make_operator(
      n * n,
      [t, n, c](const Vector& x) {
        const DenseMatrix img(n, n, x);
        DenseMatrix out = la::matmul(la::matmul(*t, img), *t);  // T symmetric, so T^T = T
        Vector y(out.entries());
        la::scale(c, y);
        return y;
      },
      4.0 * nd * nd * nd + nd * nd, 2.0 * nd * std::numeric_limits<double>::epsilon());
}

DenseMatrix blur_matrix(const BlurSpec& spec) {
  const std::size_t n = spec.n;
  if (n * n > 4096) throw InvalidArgument("blur_matrix: dense path limited to N = n^2 <= 4096");
  const DenseMatrix t = build_blur_factor(spec);
  const double c = psf_scale(spec);
  DenseMatrix a(n * n, n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t cc = 0; cc < n; ++cc)
      for (std::size_t r2 = 0; r2 < n; ++r2) {
        const double tr = t(r, r2);
        if (tr == 0.0) continue;
        for (std::size_t c2 = 0; c2 < n; ++c2) a(r * n + cc, r2 * n + c2) = c * tr * t(cc, c2);
      }
  return a;
}

}  // namespace aspatp::imaging
