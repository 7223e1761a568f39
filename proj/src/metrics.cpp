#include "sparsecfar/metrics.hpp"

#include <cmath>
#include <limits>
#include <tuple>

namespace sparsecfar {

double mse(const Vector& x_hat, const Vector& x_true) {
  if (x_hat.size() != x_true.size()) throw InputError("mse: vector lengths differ");
  return (x_hat - x_true).squaredNorm() / static_cast<double>(x_hat.size());
}

double snr_db(double sigma) {
  if (!(sigma > 0.0)) throw InputError("snr_db: sigma must be positive");
  return 10.0 * std::log10(1.0 / (sigma * sigma));
}

double sigma_from_snr_db(double snr_db) {
  return std::pow(10.0, -snr_db / 20.0);
}

std::pair<double, double> support_metrics(const SupportSet& est, const SupportSet& truth) {
  const int hits = SupportSet::intersection_size(est, truth);
  double precision;
  if (est.empty()) {
    precision = truth.empty() ? 1.0 : 0.0;
  } else {
    precision = static_cast<double>(hits) / static_cast<double>(est.size());
  }
  const double recall =
      truth.empty() ? 1.0 : static_cast<double>(hits) / static_cast<double>(truth.size());
  return {precision, recall};
}

Metrics compute_metrics(const SensingProblem& problem, const Vector& x_hat,
                        const SupportSet& support, double lambda) {
  if (!problem.x_true) {
    throw InputError("compute_metrics: problem carries no ground truth");
  }
  Metrics m;
  m.mse = mse(x_hat, *problem.x_true);
  m.objective = objective(problem.a, problem.y, x_hat, lambda);
  m.sparsity_estimate = support.size();
  const SupportSet truth = SupportSet::nonzeros_of(*problem.x_true);
  std::tie(m.support_precision, m.support_recall) = support_metrics(support, truth);
  const double sigma = problem.sigma_true.value_or(0.0);
  m.snr_db = sigma > 0.0 ? snr_db(sigma) : std::numeric_limits<double>::infinity();
  return m;
}

double gram_spectral_norm(const Matrix& a) {
  const Index n = a.cols();
  Vector v = Vector::Ones(n) / std::sqrt(static_cast<double>(n));
  double eigenvalue = 0.0;
  for (int it = 0; it < 1000000; ++it) {
    Vector w = a.transpose() * (a * v);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;  // A v vanished; A is (numerically) zero
    const double next = v.dot(w);
    v = w / norm;
    if (it > 0 && std::abs(next - eigenvalue) <= 1e-10 * std::abs(next)) {
      return next;
    }
    eigenvalue = next;
  }
  return eigenvalue;
}

Vector ista_reference(const SensingProblem& problem, double lambda, int iterations) {
  if (iterations < 1) throw InputError("ista_reference: iterations must be at least 1");
  if (problem.y.size() != problem.a.rows()) {
    throw InputError("ista_reference: y length does not match matrix rows");
  }
  if (!(lambda >= 0.0)) throw InputError("ista_reference: lambda must be nonnegative");

  const double lipschitz = gram_spectral_norm(problem.a);
  const double step = lipschitz > 0.0 ? 1.0 / lipschitz : 1.0;
  const double kappa = lambda * step;

  Vector x = Vector::Zero(problem.a.cols());
  for (int it = 0; it < iterations; ++it) {
    const Vector grad = problem.a.transpose() * (problem.a * x - problem.y);
    for (Index i = 0; i < x.size(); ++i) {
      const double v = x[i] - step * grad[i];
      x[i] = v > kappa ? v - kappa : (v < -kappa ? v + kappa : 0.0);
    }
  }
  return x;
}

}  // namespace sparsecfar
