#pragma once

#include <functional>
#include <memory>

#include "aspatp/la.hpp"

namespace aspatp::krylov {

using la::DenseMatrix;
using la::Vector;

// A square linear map with a flop price per application.
// relative_accuracy is the forward error of one apply relative to the output
// norm; Hessenberg evaluations use it to decide when H_m is singular at the
// precision the operator actually delivers.
struct LinearOperator {
  std::size_t dim = 0;
  std::function<Vector(const Vector&)> apply;
  double flops_per_apply = 0.0;
  double relative_accuracy = 0.0;
};

// Builds an operator and runs three random linearity probes on it. Throws
// InvalidArgument if apply(a x + b y) differs from a apply(x) + b apply(y) by
// more than max(1e-12, 100 * relative_accuracy) relative.
LinearOperator make_operator(std::size_t dim, std::function<Vector(const Vector&)> apply, double flops_per_apply,
                             double relative_accuracy);

// Dense matrix operator: 2 N^2 flops, accuracy N * eps. Holds its own copy.
LinearOperator dense_operator(const DenseMatrix& a);
LinearOperator dense_operator(std::shared_ptr<const DenseMatrix> a);

enum class Orthogonalization { MGS, Householder };

// Snapshot of an Arnoldi run. basis holds v_1 .. v_{m+1} (v_{m+1} is absent
// after a breakdown); h is the (m+1) x m upper Hessenberg matrix.
struct ArnoldiDecomposition {
  std::vector<Vector> basis;
  DenseMatrix h;
  std::size_t m = 0;
  bool breakdown = false;
  Orthogonalization method = Orthogonalization::MGS;

  // Leading m x m block H_m.
  DenseMatrix square(std::size_t k) const;
  // N x k matrix of the first k basis vectors.
  DenseMatrix basis_matrix(std::size_t k) const;
};

// Incremental Arnoldi. Each step() adds one column to H; step m+1 extends
// step m without recomputation.
class ArnoldiProcess {
 public:
  ArnoldiProcess(LinearOperator op, const Vector& v1, Orthogonalization method, bool reorthogonalize = false);

  // Returns false once the process has broken down or filled the space.
  bool step();
  std::size_t steps() const { return m_; }
  bool breakdown() const { return breakdown_; }
  double flops() const { return flops_; }
  const LinearOperator& op() const { return op_; }

  double h(std::size_t i, std::size_t j) const { return h_[j][i]; }
  const Vector& v(std::size_t k) const { return basis_[k]; }
  DenseMatrix square(std::size_t k) const;
  // sum_k y_k v_k for k < y.size()
  Vector combine(const Vector& y) const;

  ArnoldiDecomposition decomposition() const;

 private:
  void step_mgs(Vector w);
  void step_householder(Vector w);
  Vector householder_basis(std::size_t j) const;

  LinearOperator op_;
  Orthogonalization method_;
  bool reorth_;
  std::size_t m_ = 0;
  bool breakdown_ = false;
  bool exhausted_ = false;
  double first_norm_ = 0.0;
  double flops_ = 0.0;
  std::vector<Vector> basis_;
  std::vector<Vector> h_;  // column j holds h_{0..j+1, j}
  std::vector<la::Reflector> reflectors_;
  std::vector<double> signs_;
};

ArnoldiDecomposition arnoldi_mgs(const LinearOperator& op, const Vector& v1, std::size_t m_max,
                                 bool reorthogonalize = false);
ArnoldiDecomposition arnoldi_householder(const LinearOperator& op, const Vector& v1, std::size_t m_max);

// ||A V_m - V_{m+1} H_m||_F for a dense A.
double arnoldi_residual(const DenseMatrix& a, const ArnoldiDecomposition& d);
// max |V_m^T V_m - I|
double orthogonality_loss(const ArnoldiDecomposition& d);

struct LogProduct {
  double log10_abs = 0.0;  // -inf when a factor is zero
  int sign = 1;            // 0 when a factor is zero
  double value() const;
};

// prod_{i=1}^{m} h_{i+1,i}, accumulated in log space.
LogProduct subdiag_product(const ArnoldiDecomposition& d, std::size_t m);

}  // namespace aspatp::krylov
