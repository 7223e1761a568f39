#pragma once

#include <Eigen/Cholesky>

#include "sparsecfar/types.hpp"

namespace sparsecfar {

/// Which linear system backs a GramFactor.
enum class GramMode {
  direct,    ///< Cholesky of the N x N Gram matrix (A^T A + rho I)
  woodbury,  ///< Cholesky of the M x M matrix (A A^T + rho I), applied via the
             ///< matrix-inversion identity
};

/// Cached Cholesky factorization used to solve (A^T A + rho I) v = r.
///
/// The factor is valid only for the (A, rho) pair it was built from and is
/// immutable after construction, so it can be shared across concurrent solves.
class GramFactor {
 public:
  double rho() const noexcept { return rho_; }
  GramMode mode() const noexcept { return mode_; }
  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }

 private:
  GramFactor() = default;
  friend GramFactor factorize_gram(const Matrix& a, double rho, GramMode mode);
  friend Vector solve_gram(const GramFactor& factor, const Vector& rhs);

  double rho_ = 0.0;
  GramMode mode_ = GramMode::direct;
  Index rows_ = 0;
  Index cols_ = 0;
  Eigen::LLT<Matrix> llt_;
  Matrix a_;  // retained only in woodbury mode
};

/// Factorizes (A^T A + rho I). Picks the M x M woodbury system when M < N and
/// the N x N Gram system otherwise.
GramFactor factorize_gram(const Matrix& a, double rho);

/// Same as above with the system choice forced; both modes are valid for any
/// shape, which makes the two routes directly comparable in tests.
GramFactor factorize_gram(const Matrix& a, double rho, GramMode mode);

/// Solves (A^T A + rho I) v = rhs using the cached factorization.
Vector solve_gram(const GramFactor& factor, const Vector& rhs);

/// Componentwise shrinkage sign(v_i) * max(|v_i| - kappa, 0). Produces exact
/// zeros for |v_i| <= kappa.
Vector soft_threshold(const Vector& v, double kappa);

}  // namespace sparsecfar
