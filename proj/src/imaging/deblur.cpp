#include <algorithm>
#include <cmath>
#include <numbers>

#include "aspatp/errors.hpp"
#include "aspatp/imaging.hpp"

namespace aspatp::imaging {

GrayImage coins_pattern(std::size_t n) {
  if (n < 8) throw InvalidArgument("coins_pattern: n must be at least 8");
  struct Disc {
    double cx, cy, r, v;
  };
  // Geometry is laid out on a 32-pixel canvas and scaled to n.
  constexpr Disc discs[] = {
      {8, 8, 5, 0.9}, {22, 9, 6, 0.7}, {10, 22, 5, 0.8}, {23, 23, 6, 0.6}, {16, 16, 3, 1.0},
  };
  constexpr double background = 0.1;
  constexpr double rim = 2.0;  // pixels over which a disc edge ramps up
  const double s = static_cast<double>(n) / 32.0;

  GrayImage img;
  img.n = n;
  img.pixels.assign(n * n, background);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const double y = static_cast<double>(r) + 0.5, x = static_cast<double>(c) + 0.5;
      double& p = img.pixels[r * n + c];
      for (const Disc& d : discs) {
        const double dist = std::hypot(x - d.cx * s, y - d.cy * s);
        double w = std::clamp((d.r * s - dist) / rim + 0.5, 0.0, 1.0);
        w = 0.5 - 0.5 * std::cos(std::numbers::pi * w);
        p = std::max(p, background + (d.v - background) * w);
      }
    }
  return img;
}

DeblurResult deblur_atp(const GrayImage& img, const BlurSpec& spec, const problems::NoiseSpec& noise,
                        problems::RegKind reg, double lambda, std::size_t m_max) {
  if (img.n != spec.n) throw DimensionMismatch("deblur_atp: image side differs from BlurSpec.n");
  return deblur_atp(solvers::prepare_atp(blur_matrix(spec)), img, spec, noise, reg, lambda, m_max);
}

DeblurResult deblur_atp(const solvers::AtpSetup& setup, const GrayImage& img, const BlurSpec& spec,
                        const problems::NoiseSpec& noise, problems::RegKind reg, double lambda, std::size_t m_max) {
  if (img.n != spec.n || img.pixels.size() != img.n * img.n) {
    throw DimensionMismatch("deblur_atp: image side differs from BlurSpec.n");
  }
  if (setup.a->rows() != img.pixels.size()) throw DimensionMismatch("deblur_atp: setup built for another size");
  const Vector& x = img.pixels;
  const Vector b = problems::add_noise(la::matvec(*setup.a, x), noise);

  solvers::AtpConfig cfg;
  cfg.lambda = lambda;
  cfg.reg = {reg, x.size()};
  cfg.m_max = m_max;

  DeblurResult out;
  out.trace = solvers::atp_solve(setup, b, x, cfg);
  out.observed = clamped(GrayImage{img.n, b});
  out.restored = clamped(GrayImage{img.n, out.trace.final_iterate});
  out.abs_error = la::norm2(la::subtract(out.trace.final_iterate, x));
  out.rel_error = out.abs_error / la::norm2(x);
  return out;
}

}  // namespace aspatp::imaging
