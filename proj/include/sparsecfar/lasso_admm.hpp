#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sparsecfar/core_linalg.hpp"
#include "sparsecfar/types.hpp"

namespace sparsecfar {

/// One measurement instance y = A x + n.
struct SensingProblem {
  Matrix a;                      ///< M x N sensing matrix
  Vector y;                      ///< length-M measurement vector
  std::optional<Vector> x_true;  ///< ground truth, when known (for metrics)
  std::optional<double> sigma_true;  ///< noise standard deviation used in generation
};

/// Tunable parameters of the inner ADMM solver. Defaults follow the usual
/// benchmark settings for this solver family.
struct AdmmConfig {
  double rho = 0.9;      ///< augmented Lagrangian parameter, > 0
  double alpha = 1.5;    ///< relaxation parameter, in (0, 2); > 1 over-relaxes
  double eps_abs = 1e-5; ///< absolute tolerance, > 0
  double eps_rel = 1e-4; ///< relative tolerance, > 0
  int t_max = 1000;      ///< maximum inner iterations, >= 1

  void validate() const;
};

/// Primal pair and scaled dual variable of the ADMM splitting.
struct AdmmState {
  Vector x;
  Vector z;
  Vector u;

  static AdmmState zero(Index n);
};

/// Residuals and tolerances recorded at one inner iteration.
struct ResidualRecord {
  double r_pri = 0.0;
  double r_dual = 0.0;
  double eps_pri = 0.0;
  double eps_dual = 0.0;
};

/// Inner-solver output. x_dense is the final relaxed x iterate; z_sparse is
/// the final shrinkage output, whose components are exactly zero or nonzero,
/// and is what downstream support extraction must use.
struct AdmmResult {
  Vector x_dense;
  Vector z_sparse;
  Vector u_final;
  int iterations = 0;
  bool converged = false;
  std::vector<ResidualRecord> residual_history;
};

/// Primal and dual residual norms: (||x_new - z_new||_2, ||rho (z_new - z_old)||_2).
std::pair<double, double> residuals(const Vector& z_new, const Vector& z_old,
                                    const Vector& x_new, double rho);

/// Primal and dual stopping tolerances
///   eps_pri  = sqrt(N) eps_abs + eps_rel max(||x||, ||z||)
///   eps_dual = sqrt(N) eps_abs + eps_rel ||rho u||
/// with N the decision-variable dimension.
std::pair<double, double> tolerances(const Vector& x, const Vector& z, const Vector& u,
                                     double rho, const AdmmConfig& config);

/// LASSO objective (1/2)||y - A x||_2^2 + lambda ||x||_1.
double objective(const Matrix& a, const Vector& y, const Vector& x, double lambda);

/// ||A^T y||_inf, the smallest lambda for which the LASSO solution is all-zero.
double lambda_max(const Matrix& a, const Vector& y);

/// LASSO solved by ADMM with over-relaxation and primal/dual residual stopping.
///
/// Iterates, for k = 1..t_max:
///   x' = (A^T A + rho I)^{-1} (A^T y + rho (z - u))   [via the cached factor]
///   x  = alpha x' + (1 - alpha) z
///   z  = S_{lambda/rho}(x + u)
///   u  = u + x - z
/// and stops as soon as both residuals fall below their tolerances.
///
/// `factor` must have been built from (problem.a, config.rho). `init` supplies
/// the starting state so outer loops can warm-start. Throws DivergenceError if
/// an iterate turns non-finite.
AdmmResult lasso_admm(const SensingProblem& problem, double lambda,
                      const AdmmConfig& config, const GramFactor& factor,
                      const AdmmState& init);

}  // namespace sparsecfar
