#include <algorithm>
#include <cmath>
#include <limits>

#include "aspatp/errors.hpp"
#include "aspatp/krylov.hpp"

namespace aspatp::krylov {

namespace {
constexpr double kBreakdownTol = 1e-14;
}

ArnoldiProcess::ArnoldiProcess(LinearOperator op, const Vector& v1, Orthogonalization method, bool reorthogonalize)
    : op_(std::move(op)), method_(method), reorth_(reorthogonalize) {
  if (v1.size() != op_.dim) throw DimensionMismatch("ArnoldiProcess: start vector length mismatch");
  const double nv = la::norm2(v1);
  if (!(nv > 0.0) || !std::isfinite(nv)) throw InvalidArgument("ArnoldiProcess: start vector is zero or not finite");
  const double n = static_cast<double>(op_.dim);
  if (method_ == Orthogonalization::MGS) {
    Vector q = v1;
    la::scale(1.0 / nv, q);
    basis_.push_back(std::move(q));
    flops_ += 3.0 * n;
  } else {
    la::Reflector p0 = la::householder(v1.data(), v1.size());
    const double s0 = p0.alpha >= 0.0 ? 1.0 : -1.0;
    Vector q(op_.dim, 0.0);
    q[0] = s0;
    la::apply_reflector(p0, q.data());
    reflectors_.push_back(std::move(p0));
    signs_.push_back(s0);
    basis_.push_back(std::move(q));
    flops_ += 7.0 * n;
  }
}

bool ArnoldiProcess::step() {
  if (breakdown_ || exhausted_) return false;
  Vector w = op_.apply(basis_[m_]);
  flops_ += op_.flops_per_apply;
  if (m_ == 0) first_norm_ = la::norm2(w);
  if (method_ == Orthogonalization::MGS) {
    step_mgs(std::move(w));
  } else {
    step_householder(std::move(w));
  }
  ++m_;
  return true;
}

void ArnoldiProcess::step_mgs(Vector w) {
  const std::size_t j = m_;
  const double n = static_cast<double>(op_.dim);
  Vector col(j + 2, 0.0);
  const int passes = reorth_ ? 2 : 1;
  for (int pass = 0; pass < passes; ++pass) {
    for (std::size_t k = 0; k <= j; ++k) {
      const double hk = la::dot(basis_[k], w);
      la::axpy(-hk, basis_[k], w);
      col[k] += hk;
      flops_ += 4.0 * n;
    }
  }
  const double beta = la::norm2(w);
  flops_ += 2.0 * n;
  if (j + 1 == op_.dim) {
    // The Krylov space is the whole space: h_{N+1,N} is zero in exact arithmetic.
    col[j + 1] = 0.0;
    exhausted_ = true;
    breakdown_ = true;
  } else if (beta <= kBreakdownTol * first_norm_) {
    col[j + 1] = beta;
    breakdown_ = true;
  } else {
    col[j + 1] = beta;
    la::scale(1.0 / beta, w);
    flops_ += n;
    basis_.push_back(std::move(w));
  }
  h_.push_back(std::move(col));
}

void ArnoldiProcess::step_householder(Vector w) {
  const std::size_t j = m_;
  const std::size_t big_n = op_.dim;
  for (std::size_t k = 0; k <= j; ++k) {
    la::apply_reflector(reflectors_[k], w.data() + k);
    flops_ += 4.0 * static_cast<double>(big_n - k);
  }
  Vector col(j + 2, 0.0);
  for (std::size_t i = 0; i <= j; ++i) col[i] = signs_[i] * w[i];

  if (j + 1 == big_n) {
    col[j + 1] = 0.0;
    exhausted_ = true;
    breakdown_ = true;
    h_.push_back(std::move(col));
    return;
  }
  la::Reflector p = la::householder(w.data() + j + 1, big_n - j - 1);
  flops_ += 3.0 * static_cast<double>(big_n - j - 1);
  const double alpha = p.alpha;
  col[j + 1] = std::abs(alpha);
  h_.push_back(std::move(col));
  if (std::abs(alpha) <= kBreakdownTol * first_norm_) {
    breakdown_ = true;
    return;
  }
  signs_.push_back(alpha >= 0.0 ? 1.0 : -1.0);
  reflectors_.push_back(std::move(p));
  basis_.push_back(householder_basis(j + 1));
  for (std::size_t r = 0; r <= j + 1; ++r) flops_ += 4.0 * static_cast<double>(big_n - r);
}

// v_k = s_k P_0 P_1 ... P_k e_k
Vector ArnoldiProcess::householder_basis(std::size_t k) const {
  const std::size_t big_n = op_.dim;
  Vector q(big_n, 0.0);
  q[k] = signs_[k];
  for (std::size_t r = k + 1; r-- > 0;) {
    la::apply_reflector(reflectors_[r], q.data() + r);
  }
  return q;
}

DenseMatrix ArnoldiProcess::square(std::size_t k) const {
  if (k > m_) throw InvalidArgument("ArnoldiProcess::square: k exceeds completed steps");
  DenseMatrix s(k, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < k && i < h_[j].size(); ++i) s(i, j) = h_[j][i];
  return s;
}

Vector ArnoldiProcess::combine(const Vector& y) const {
  if (y.size() > basis_.size()) throw DimensionMismatch("ArnoldiProcess::combine: too many coefficients");
  Vector x(op_.dim, 0.0);
  for (std::size_t k = 0; k < y.size(); ++k) la::axpy(y[k], basis_[k], x);
  return x;
}

ArnoldiDecomposition ArnoldiProcess::decomposition() const {
  ArnoldiDecomposition d;
  d.m = m_;
  d.breakdown = breakdown_;
  d.method = method_;
  d.basis = basis_;
  d.h = DenseMatrix(m_ + 1, m_);
  for (std::size_t j = 0; j < m_; ++j)
    for (std::size_t i = 0; i < h_[j].size(); ++i) d.h(i, j) = h_[j][i];
  return d;
}

DenseMatrix ArnoldiDecomposition::square(std::size_t k) const {
  if (k > m) throw InvalidArgument("ArnoldiDecomposition::square: k exceeds m");
  return h.block(k, k);
}

DenseMatrix ArnoldiDecomposition::basis_matrix(std::size_t k) const {
  if (k > basis.size()) throw InvalidArgument("ArnoldiDecomposition::basis_matrix: k exceeds basis size");
  const std::size_t n = basis.empty() ? 0 : basis[0].size();
  DenseMatrix v(n, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i) v(i, j) = basis[j][i];
  return v;
}

ArnoldiDecomposition arnoldi_mgs(const LinearOperator& op, const Vector& v1, std::size_t m_max, bool reorthogonalize) {
  ArnoldiProcess p(op, v1, Orthogonalization::MGS, reorthogonalize);
  while (p.steps() < m_max && p.step()) {
  }
  return p.decomposition();
}

ArnoldiDecomposition arnoldi_householder(const LinearOperator& op, const Vector& v1, std::size_t m_max) {
  ArnoldiProcess p(op, v1, Orthogonalization::Householder);
  while (p.steps() < m_max && p.step()) {
  }
  return p.decomposition();
}

double arnoldi_residual(const DenseMatrix& a, const ArnoldiDecomposition& d) {
  double s = 0.0;
  for (std::size_t j = 0; j < d.m; ++j) {
    Vector r = la::matvec(a, d.basis[j]);
    for (std::size_t i = 0; i <= j + 1 && i < d.basis.size(); ++i) la::axpy(-d.h(i, j), d.basis[i], r);
    for (double v : r) s += v * v;
  }
  return std::sqrt(s);
}

double orthogonality_loss(const ArnoldiDecomposition& d) {
  const std::size_t k = std::min(d.m, d.basis.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double g = la::dot(d.basis[i], d.basis[j]) - (i == j ? 1.0 : 0.0);
      worst = std::max(worst, std::abs(g));
    }
  return worst;
}

double LogProduct::value() const {
  if (sign == 0) return 0.0;
  return sign * std::pow(10.0, log10_abs);
}

LogProduct subdiag_product(const ArnoldiDecomposition& d, std::size_t m) {
  if (m > d.m) throw InvalidArgument("subdiag_product: m exceeds decomposition size");
  LogProduct p;
  for (std::size_t i = 0; i < m; ++i) {
    const double h = d.h(i + 1, i);
    if (h == 0.0) {
      p.sign = 0;
      p.log10_abs = -std::numeric_limits<double>::infinity();
      return p;
    }
    if (h < 0.0) p.sign = -p.sign;
    p.log10_abs += std::log10(std::abs(h));
  }
  return p;
}

}  // namespace aspatp::krylov
