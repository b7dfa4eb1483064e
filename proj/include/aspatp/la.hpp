#pragma once

// Dense linear algebra kernel.
//
// Storage order: every DenseMatrix in this library is row-major, entry (i, j)
// lives at data()[i * cols() + j]. All operations consume and produce that
// layout. Vectors are plain std::vector<double>.

#include <cstddef>
#include <vector>

namespace aspatp::la {

using Vector = std::vector<double>;

class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(const Vector& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }
  double* row(std::size_t i) { return a_.data() + i * cols_; }
  const double* row(std::size_t i) const { return a_.data() + i * cols_; }
  const std::vector<double>& entries() const { return a_; }

  Vector column(std::size_t j) const;
  DenseMatrix transposed() const;
  // Leading r x c block.
  DenseMatrix block(std::size_t r, std::size_t c) const;

  double max_abs() const;
  double frobenius() const;
  bool all_finite() const;
  // max |a_ij - a_ji|
  double asymmetry() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> a_;
};

// --- vector helpers (serial, O(n)) ---
double dot(const Vector& x, const Vector& y);
double norm2(const Vector& x);
double norm_inf(const Vector& x);
void axpy(double alpha, const Vector& x, Vector& y);  // y += alpha x
void scale(double alpha, Vector& x);
Vector subtract(const Vector& x, const Vector& y);
Vector add_scaled(const Vector& x, double alpha, const Vector& y);  // x + alpha y
bool all_finite(const Vector& x);

DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b, double beta = 1.0);  // a + beta b
DenseMatrix shifted(const DenseMatrix& a, double shift);                        // a + shift I
DenseMatrix symmetrized(const DenseMatrix& a);                                  // (a + a^T)/2

// --- OpenMP kernels. Each output entry is accumulated in a fixed order, so the
// result is bitwise identical to the serial reference in la::serial for any
// thread count. ---
Vector matvec(const DenseMatrix& a, const Vector& x);
Vector matvec_transposed(const DenseMatrix& a, const Vector& x);
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix gram(const DenseMatrix& a);  // a^T a

namespace serial {
Vector matvec(const DenseMatrix& a, const Vector& x);
Vector matvec_transposed(const DenseMatrix& a, const Vector& x);
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix gram(const DenseMatrix& a);
}  // namespace serial

// --- factorizations ---
struct LuFactors {
  DenseMatrix lu;                 // unit-lower L below the diagonal, U on and above
  std::vector<std::size_t> perm;  // row i of P*A is row perm[i] of A
  int sign = 1;
};

struct CholeskyFactor {
  DenseMatrix l;  // lower triangular, S = L L^T
};

enum class Exec { Parallel, Serial };

// Throws SingularToWorkingPrecision when a pivot magnitude falls below 1e-300.
// Extreme ill-conditioning is not an error.
LuFactors lu_factor(const DenseMatrix& a, Exec exec = Exec::Parallel);
Vector lu_solve(const LuFactors& f, const Vector& b);
Vector lu_solve_transposed(const LuFactors& f, const Vector& b);  // solves A^T x = b

// Requires symmetry within 1e-12 * max|S|; only the lower triangle is read.
CholeskyFactor cholesky_factor(const DenseMatrix& s, Exec exec = Exec::Parallel);
Vector cholesky_solve(const CholeskyFactor& f, const Vector& b);

struct SymEigen {
  Vector values;        // descending
  DenseMatrix vectors;  // column k pairs with values[k]
  int sweeps = 0;
  double off_norm = 0.0;
};

SymEigen eig_sym_jacobi(const DenseMatrix& s, int max_sweeps = 50);

// Householder reflector P = I - beta u u^T with P x = alpha e1.
struct Reflector {
  Vector u;
  double beta = 0.0;
  double alpha = 0.0;
};
Reflector householder(const double* x, std::size_t n);
// Applies P to y[0 .. u.size()).
void apply_reflector(const Reflector& r, double* y);

struct CondEstimate {
  double kappa = 1.0;
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  bool finite = true;  // false when the LU hit an exactly singular pivot
};

// sigma_max by 30 power steps on A^T A and sigma_min by 30 inverse steps
// through lu_factor, both from the all-ones vector. Order-of-magnitude
// accuracy only.
CondEstimate cond2_estimate(const DenseMatrix& a);
// Same, reusing an existing LU of a.
CondEstimate cond2_estimate(const DenseMatrix& a, const LuFactors& f);
// Same estimate for a symmetric positive definite matrix, through Cholesky.
CondEstimate cond2_estimate_spd(const DenseMatrix& s, const CholeskyFactor& f);

}  // namespace aspatp::la
