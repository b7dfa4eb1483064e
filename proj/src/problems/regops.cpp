#include <cmath>
#include <string>

#include "aspatp/errors.hpp"
#include "aspatp/problems.hpp"

namespace aspatp::problems {

namespace {

std::size_t grid_side(std::size_t unknowns) {
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(unknowns))));
  if (n * n != unknowns) {
    throw InvalidArgument("2-D regularization operator needs a square grid, N = " + std::to_string(unknowns));
  }
  return n;
}

// n x n upper bidiagonal with 1 on the diagonal and -1 above it. The last
// row is (0, ..., 0, 1), which keeps the matrix nonsingular.
DenseMatrix forward_difference(std::size_t n) {
  DenseMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = 1.0;
    if (i + 1 < n) h(i, i + 1) = -1.0;
  }
  return h;
}

}  // namespace

DenseMatrix build_reg_operator(const RegOperatorKind& kind) {
  const std::size_t big_n = kind.unknowns;
  if (big_n == 0) throw InvalidArgument("build_reg_operator: empty grid");
  switch (kind.kind) {
    case RegKind::Identity:
      return DenseMatrix::identity(big_n);
    case RegKind::SecondDerivative1D: {
      DenseMatrix h(big_n, big_n);
      for (std::size_t i = 0; i < big_n; ++i) {
        h(i, i) = 2.0;
        if (i > 0) h(i, i - 1) = -1.0;
        if (i + 1 < big_n) h(i, i + 1) = -1.0;
      }
      return h;
    }
    case RegKind::GradientStack2D: {
      // [I (x) H1 ; H1 (x) I] on the row-major grid index r * n + c.
      const std::size_t n = grid_side(big_n);
      const DenseMatrix h1 = forward_difference(n);
      DenseMatrix h(2 * big_n, big_n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          for (std::size_t k = 0; k < n; ++k) {
            h(r * n + c, r * n + k) = h1(c, k);
            h(big_n + r * n + c, k * n + c) = h1(r, k);
          }
      return h;
    }
    case RegKind::Laplacian2D: {
      const std::size_t n = grid_side(big_n);
      DenseMatrix h(big_n, big_n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          const std::size_t i = r * n + c;
          h(i, i) = 4.0;
          if (r > 0) h(i, i - n) = -1.0;
          if (r + 1 < n) h(i, i + n) = -1.0;
          if (c > 0) h(i, i - 1) = -1.0;
          if (c + 1 < n) h(i, i + 1) = -1.0;
        }
      return h;
    }
  }
  throw InvalidArgument("build_reg_operator: unknown kind");
}

RegKind parse_reg_kind(std::string_view s) {
  if (s == "identity") return RegKind::Identity;
  if (s == "d2") return RegKind::SecondDerivative1D;
  if (s == "grad2d") return RegKind::GradientStack2D;
  if (s == "lap2d") return RegKind::Laplacian2D;
  throw InvalidArgument("unknown regularization operator '" + std::string(s) + "'");
}

std::string reg_kind_name(RegKind k) {
  switch (k) {
    case RegKind::Identity: return "identity";
    case RegKind::SecondDerivative1D: return "d2";
    case RegKind::GradientStack2D: return "grad2d";
    case RegKind::Laplacian2D: return "lap2d";
  }
  return "unknown";
}

}  // namespace aspatp::problems
