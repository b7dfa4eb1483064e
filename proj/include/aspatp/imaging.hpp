#pragma once

#include <string>

#include "aspatp/krylov.hpp"
#include "aspatp/problems.hpp"
#include "aspatp/solvers.hpp"

namespace aspatp::imaging {

using la::DenseMatrix;
using la::Vector;

struct BlurSpec {
  std::size_t n = 32;      // image side
  std::size_t q = 6;       // half-bandwidth of T
  double sigma = 1.5;      // PSF width in pixels
};

// n x n grayscale image, row-major, nominally in [0, 1].
struct GrayImage {
  std::size_t n = 0;
  std::vector<double> pixels;
};

// Symmetric banded Toeplitz T with first row v_j = exp(-(j-1)^2 / (2 sigma^2))
// for j <= q and zero beyond.
DenseMatrix build_blur_factor(const BlurSpec& spec);

// X -> T X T^T / (2 pi sigma^2) on vec(X), the Kronecker form of
// A = (2 pi sigma^2)^{-1} T (x) T.
krylov::LinearOperator blur_operator(const BlurSpec& spec);
// Explicit N x N matrix, N = n^2 <= 4096.
DenseMatrix blur_matrix(const BlurSpec& spec);

GrayImage read_pgm(const std::string& path);
// Binary P5, maxval 255, each pixel clamped to [0, 1] and rounded half up.
void write_pgm(const GrayImage& img, const std::string& path);

// Synthetic desk-scale test image: five soft-rimmed discs of different
// brightness on a dark background.
GrayImage coins_pattern(std::size_t n);

GrayImage clamped(const GrayImage& img);

struct DeblurResult {
  GrayImage restored;  // final iterate, clamped
  GrayImage observed;  // blurred and noisy data, clamped
  solvers::SolverTrace trace;
  double rel_error = 0.0;  // |x_m - vec(X)| / |vec(X)| on the unclamped final iterate
  double abs_error = 0.0;
};

DeblurResult deblur_atp(const GrayImage& img, const BlurSpec& spec, const problems::NoiseSpec& noise,
                        problems::RegKind reg, double lambda, std::size_t m_max);

// Same, reusing a prepared ATP setup for blur_matrix(spec) across calls.
DeblurResult deblur_atp(const solvers::AtpSetup& setup, const GrayImage& img, const BlurSpec& spec,
                        const problems::NoiseSpec& noise, problems::RegKind reg, double lambda, std::size_t m_max);

}  // namespace aspatp::imaging
