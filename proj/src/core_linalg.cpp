#include "sparsecfar/core_linalg.hpp"

namespace sparsecfar {

GramFactor factorize_gram(const Matrix& a, double rho) {
  const GramMode mode = a.rows() < a.cols() ? GramMode::woodbury : GramMode::direct;
  return factorize_gram(a, rho, mode);
}

GramFactor factorize_gram(const Matrix& a, double rho, GramMode mode) {
  if (a.rows() < 1 || a.cols() < 1) {
    throw InputError("factorize_gram: matrix must have at least one row and column");
  }
  if (!a.allFinite()) {
    throw InputError("factorize_gram: matrix has non-finite entries");
  }
  if (!(rho > 0.0)) {
    throw InputError("factorize_gram: rho must be positive");
  }

  GramFactor factor;
  factor.rho_ = rho;
  factor.mode_ = mode;
  factor.rows_ = a.rows();
  factor.cols_ = a.cols();

  if (mode == GramMode::direct) {
    Matrix gram = a.transpose() * a;
    gram.diagonal().array() += rho;
    factor.llt_.compute(gram);
  } else {
    Matrix outer = a * a.transpose();
    outer.diagonal().array() += rho;
    factor.llt_.compute(outer);
    factor.a_ = a;
  }
  if (factor.llt_.info() != Eigen::Success) {
    // The system is SPD for rho > 0, so this indicates numeric breakdown.
    throw NumericError("factorize_gram: Cholesky factorization failed");
  }
  return factor;
}

Vector solve_gram(const GramFactor& factor, const Vector& rhs) {
  if (rhs.size() != factor.cols_) {
    throw InputError("solve_gram: rhs length does not match column count");
  }
  if (factor.mode_ == GramMode::direct) {
    return factor.llt_.solve(rhs);
  }
  // (A^T A + rho I)^{-1} r = (r - A^T (A A^T + rho I)^{-1} A r) / rho
  Vector w = factor.llt_.solve(factor.a_ * rhs);
  return (rhs - factor.a_.transpose() * w) / factor.rho_;
}

Vector soft_threshold(const Vector& v, double kappa) {
  if (!(kappa >= 0.0)) {
    throw InputError("soft_threshold: kappa must be nonnegative");
  }
  Vector out(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    const double magnitude = std::abs(v[i]) - kappa;
    out[i] = magnitude > 0.0 ? (v[i] > 0.0 ? magnitude : -magnitude) : 0.0;
  }
  return out;
}

}  // namespace sparsecfar
