#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "aspatp/la.hpp"

namespace aspatp::problems {

using la::DenseMatrix;
using la::Vector;

// Discretized first-kind Fredholm equation. b_exact is always A * x_exact.
struct TestProblem {
  std::string name;
  std::size_t n = 0;
  DenseMatrix a;
  Vector b_exact;
  Vector x_exact;
};

struct ProblemParams {
  double gravity_depth = 0.25;
};

// name is one of baart, shaw, foxgood, gravity; N >= 8. All four use the
// midpoint rule on N collocation points.
TestProblem generate(std::string_view name, std::size_t n, const ProblemParams& params = {});
bool is_gallery_name(std::string_view name);

// Noise e = delta * |b| / sqrt(N) * u with u standard normal. u comes from
// std::mt19937_64 seeded with `seed`, mapped to 53-bit uniforms and passed
// through Box-Muller (both variates of each pair are used). The stream is
// local to the call.
struct NoiseSpec {
  double delta = 0.0;
  std::uint64_t seed = 0;
};

Vector standard_normal(std::size_t n, std::uint64_t seed);
Vector add_noise(const Vector& b, const NoiseSpec& spec);

enum class RegKind { Identity, SecondDerivative1D, GradientStack2D, Laplacian2D };

// `unknowns` is N, the length of x. The 2-D kinds require N = n * n.
struct RegOperatorKind {
  RegKind kind = RegKind::Identity;
  std::size_t unknowns = 0;
};

DenseMatrix build_reg_operator(const RegOperatorKind& kind);
RegKind parse_reg_kind(std::string_view s);  // identity, d2, grad2d, lap2d
std::string reg_kind_name(RegKind k);

// Plain text: "rows cols" on the first line, then one row per line with
// entries printed to round-trip precision.
void write_matrix_text(const DenseMatrix& m, std::ostream& os);
DenseMatrix read_matrix_text(std::istream& is);
void write_matrix_file(const DenseMatrix& m, const std::string& path);
DenseMatrix read_matrix_file(const std::string& path);

}  // namespace aspatp::problems
