#include "sparsecfar/lasso_admm.hpp"

#include <cmath>

namespace sparsecfar {

void AdmmConfig::validate() const {
  if (!(rho > 0.0)) throw InputError("AdmmConfig: rho must be positive");
  if (!(alpha > 0.0 && alpha < 2.0)) throw InputError("AdmmConfig: alpha must be in (0, 2)");
  if (!(eps_abs > 0.0)) throw InputError("AdmmConfig: eps_abs must be positive");
  if (!(eps_rel > 0.0)) throw InputError("AdmmConfig: eps_rel must be positive");
  if (t_max < 1) throw InputError("AdmmConfig: t_max must be at least 1");
}

AdmmState AdmmState::zero(Index n) {
  return AdmmState{Vector::Zero(n), Vector::Zero(n), Vector::Zero(n)};
}

std::pair<double, double> residuals(const Vector& z_new, const Vector& z_old,
                                    const Vector& x_new, double rho) {
  if (z_new.size() != z_old.size() || z_new.size() != x_new.size()) {
    throw InputError("residuals: vector lengths differ");
  }
  const double r_pri = (x_new - z_new).norm();
  const double r_dual = rho * (z_new - z_old).norm();
  return {r_pri, r_dual};
}

std::pair<double, double> tolerances(const Vector& x, const Vector& z, const Vector& u,
                                     double rho, const AdmmConfig& config) {
  if (x.size() != z.size() || x.size() != u.size()) {
    throw InputError("tolerances: vector lengths differ");
  }
  const double sqrt_n = std::sqrt(static_cast<double>(x.size()));
  const double eps_pri =
      sqrt_n * config.eps_abs + config.eps_rel * std::max(x.norm(), z.norm());
  const double eps_dual = sqrt_n * config.eps_abs + config.eps_rel * rho * u.norm();
  return {eps_pri, eps_dual};
}

double objective(const Matrix& a, const Vector& y, const Vector& x, double lambda) {
  if (a.rows() != y.size() || a.cols() != x.size()) {
    throw InputError("objective: inconsistent shapes");
  }
  if (!(lambda >= 0.0)) throw InputError("objective: lambda must be nonnegative");
  return 0.5 * (y - a * x).squaredNorm() + lambda * x.lpNorm<1>();
}

double lambda_max(const Matrix& a, const Vector& y) {
  if (a.rows() != y.size()) throw InputError("lambda_max: inconsistent shapes");
  return (a.transpose() * y).lpNorm<Eigen::Infinity>();
}

AdmmResult lasso_admm(const SensingProblem& problem, double lambda,
                      const AdmmConfig& config, const GramFactor& factor,
                      const AdmmState& init) {
  config.validate();
  if (!(lambda >= 0.0)) throw InputError("lasso_admm: lambda must be nonnegative");
  const Index n = problem.a.cols();
  if (problem.y.size() != problem.a.rows()) {
    throw InputError("lasso_admm: y length does not match matrix rows");
  }
  if (init.x.size() != n || init.z.size() != n || init.u.size() != n) {
    throw InputError("lasso_admm: init state length does not match matrix columns");
  }
  if (factor.cols() != n || factor.rho() != config.rho) {
    throw InputError("lasso_admm: factor was not built from (A, rho)");
  }

  const Vector aty = problem.a.transpose() * problem.y;
  const double kappa = lambda / config.rho;

  AdmmResult result;
  result.residual_history.reserve(static_cast<std::size_t>(config.t_max));
  Vector x = init.x;
  Vector z = init.z;
  Vector u = init.u;

  for (int k = 1; k <= config.t_max; ++k) {
    const Vector x_relaxed =
        config.alpha * solve_gram(factor, aty + config.rho * (z - u)) +
        (1.0 - config.alpha) * z;
    const Vector z_new = soft_threshold(x_relaxed + u, kappa);
    u += x_relaxed - z_new;

    if (!(x_relaxed.allFinite() && z_new.allFinite() && u.allFinite())) {
      throw DivergenceError(
          "lasso_admm: non-finite iterate at inner iteration " + std::to_string(k), k);
    }

    const auto [r_pri, r_dual] = residuals(z_new, z, x_relaxed, config.rho);
    const auto [eps_pri, eps_dual] = tolerances(x_relaxed, z_new, u, config.rho, config);
    result.residual_history.push_back({r_pri, r_dual, eps_pri, eps_dual});

    x = x_relaxed;
    z = z_new;
    result.iterations = k;
    if (r_pri < eps_pri && r_dual < eps_dual) {
      result.converged = true;
      break;
    }
  }

  result.x_dense = std::move(x);
  result.z_sparse = std::move(z);
  result.u_final = std::move(u);
  return result;
}

}  // namespace sparsecfar
