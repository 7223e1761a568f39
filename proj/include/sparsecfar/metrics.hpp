#pragma once

#include <utility>

#include "sparsecfar/lasso_admm.hpp"
#include "sparsecfar/support_set.hpp"
#include "sparsecfar/types.hpp"

namespace sparsecfar {

/// Evaluation metrics for one recovered estimate.
struct Metrics {
  double mse = 0.0;
  double objective = 0.0;
  int sparsity_estimate = 0;
  double support_precision = 0.0;
  double support_recall = 0.0;
  double snr_db = 0.0;
};

/// ||x_hat - x_true||_2^2 / N.
double mse(const Vector& x_hat, const Vector& x_true);

/// 10 log10(1 / sigma^2).
double snr_db(double sigma);

/// Inverse of snr_db.
double sigma_from_snr_db(double snr_db);

/// (precision, recall) of an estimated support against the truth.
/// Conventions: precision is 1 when both sets are empty and 0 when only the
/// estimate is empty; recall is 1 when the truth is empty.
std::pair<double, double> support_metrics(const SupportSet& est, const SupportSet& truth);

/// Full metric bundle for an estimate of a synthetic problem. Requires the
/// problem to carry its ground truth; snr_db is +inf for noiseless problems.
Metrics compute_metrics(const SensingProblem& problem, const Vector& x_hat,
                        const SupportSet& support, double lambda);

/// Largest eigenvalue of A^T A by power iteration, to 1e-10 relative tolerance.
double gram_spectral_norm(const Matrix& a);

/// Slow proximal-gradient (ISTA) reference for the LASSO minimizer, used as an
/// independent correctness oracle for the ADMM path. Fixed step 1/L with L the
/// power-iteration spectral norm of A^T A; deterministic from a zero start.
/// Shares no solver machinery with the ADMM implementation.
Vector ista_reference(const SensingProblem& problem, double lambda, int iterations);

}  // namespace sparsecfar
