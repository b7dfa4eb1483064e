#include <cmath>
#include <numbers>
#include <random>

#include "aspatp/errors.hpp"
#include "aspatp/problems.hpp"

namespace aspatp::problems {

namespace {

// Uniform on (0, 1]: the top 53 bits of one mt19937_64 draw, shifted off zero.
double uniform_open(std::mt19937_64& g) {
  return (static_cast<double>(g() >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

Vector standard_normal(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  Vector u(n);
  for (std::size_t i = 0; i < n; i += 2) {
    const double r = std::sqrt(-2.0 * std::log(uniform_open(g)));
    const double theta = 2.0 * std::numbers::pi * uniform_open(g);
    u[i] = r * std::cos(theta);
    if (i + 1 < n) u[i + 1] = r * std::sin(theta);
  }
  return u;
}

Vector add_noise(const Vector& b, const NoiseSpec& spec) {
  if (!(spec.delta >= 0.0)) throw InvalidArgument("add_noise: delta must be non-negative");
  if (spec.delta == 0.0 || b.empty()) return b;
  const Vector u = standard_normal(b.size(), spec.seed);
  const double amp = spec.delta * la::norm2(b) / std::sqrt(static_cast<double>(b.size()));
  return la::add_scaled(b, amp, u);
}

}  // namespace aspatp::problems
