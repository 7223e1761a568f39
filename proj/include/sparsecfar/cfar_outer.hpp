#pragma once

#include <optional>
#include <vector>

#include "sparsecfar/lasso_admm.hpp"
#include "sparsecfar/support_set.hpp"
#include "sparsecfar/types.hpp"

namespace sparsecfar {

/// Which thresholded estimate the outer loop emits when the variance-based
/// stopping rule fires.
enum class FinalEstimatePolicy {
  previous_iterate,  ///< the last estimate whose variance was still increasing
  current_iterate,   ///< the estimate of the iteration that triggered the stop
};

enum class CfarTermination {
  sigma_decrease,  ///< stopping rule fired (variance stopped increasing)
  empty_support,   ///< degenerate support: all-zero estimate, or no zero support
  l_max_reached,   ///< safety cap on outer iterations hit
};

enum class StoppingDecision { continue_loop, terminate };

/// Tunable parameters of the adaptive-regularization outer loop.
struct CfarConfig {
  double p_fa = 1e-3;  ///< target false alarm rate, in (0, 1)
  std::optional<double> lambda_init;  ///< initial lambda; 0.1 * lambda_max when unset
  int l_max = 50;      ///< safety cap on outer iterations
  FinalEstimatePolicy final_estimate_policy = FinalEstimatePolicy::previous_iterate;

  void validate() const;
};

/// Diagnostics for one outer iteration.
struct OuterIterRecord {
  int l = 0;                     ///< outer iteration index, from 0
  double sigma2_hat = 0.0;       ///< noise-variance estimate
  double t_fa = 0.0;             ///< false-alarm regulation threshold
  double lambda_used = 0.0;      ///< lambda the inner solve used
  int support_size_before = 0;   ///< nonzero support of the inner estimate
  int support_size_after = 0;    ///< support after CFAR thresholding
  int inner_iterations = 0;
};

/// Outer-loop output. x_hat is exactly zero outside `support`, and the
/// support size is the sparsity-order estimate.
struct CfarResult {
  Vector x_hat;
  SupportSet support;
  std::vector<OuterIterRecord> records;
  CfarTermination termination = CfarTermination::sigma_decrease;
};

/// Matched-filter projection A^T y of the measurements back to signal space.
Vector matched_projection(const Matrix& a, const Vector& y);

/// Keeps the components of x_tilde indexed by zero_support and zeroes the rest.
Vector restrict_to_zero_support(const Vector& x_tilde, const SupportSet& zero_support);

/// Maps the zero-support projection back to measurement space: A * x_restricted.
Vector residual_noise(const Matrix& a, const Vector& x_restricted);

/// Noise-variance estimate sum_j |y_tilde_j|^2 / (2 |zero support|).
/// Throws when the zero support is empty.
double estimate_noise_variance(const Vector& y_tilde, Index zero_support_size);

/// Rayleigh false-alarm threshold sqrt(-2 sigma2_hat ln(p_fa)): a pure-noise
/// magnitude exceeds it with probability exactly p_fa.
double cfar_threshold(double sigma2_hat, double p_fa);

/// Keeps the indices of `support` whose estimate magnitude strictly exceeds t_fa.
SupportSet update_support(const Vector& x_hat, const SupportSet& support, double t_fa);

/// Keeps the components of x_hat indexed by support_updated and zeroes the rest.
Vector threshold_estimate(const Vector& x_hat, const SupportSet& support_updated);

/// Continue while the variance estimate strictly increases.
StoppingDecision stopping_decision(double sigma2_curr, double sigma2_prev);

/// Iterative adaptively-regularized LASSO-ADMM with CFAR thresholding.
///
/// Each outer iteration runs the inner ADMM solver, estimates the noise
/// variance from the measurement residual y - A x_hat normalized by the size
/// of the zero support of the exactly-sparse iterate, converts it into a CFAR
/// threshold, prunes the support, and feeds the threshold back as the next
/// regularization parameter with the pruned estimate as warm start. The loop
/// stops when the variance estimate stops increasing (the previous pruned
/// estimate is emitted under the default policy), on degenerate supports, or
/// at l_max.
CfarResult iar_lasso_admm_cfar(const SensingProblem& problem, const AdmmConfig& admm_cfg,
                               const CfarConfig& cfar_cfg);

/// Verifies the structural guarantees of a finished run: lambda strictly
/// increasing after the first update, per-iteration support shrinkage,
/// x_hat nonzero exactly on its support, and the l_max cap. Throws
/// std::logic_error on violation.
void check_structural_invariants(const CfarResult& result, int l_max);

}  // namespace sparsecfar
