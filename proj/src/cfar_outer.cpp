#include "sparsecfar/cfar_outer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sparsecfar {

void CfarConfig::validate() const {
  if (!(p_fa > 0.0 && p_fa < 1.0)) throw InputError("CfarConfig: p_fa must be in (0, 1)");
  if (lambda_init && !(*lambda_init >= 0.0)) {
    throw InputError("CfarConfig: lambda_init must be nonnegative");
  }
  if (l_max < 1) throw InputError("CfarConfig: l_max must be at least 1");
}

Vector matched_projection(const Matrix& a, const Vector& y) {
  if (a.rows() != y.size()) throw InputError("matched_projection: inconsistent shapes");
  return a.transpose() * y;
}

Vector restrict_to_zero_support(const Vector& x_tilde, const SupportSet& zero_support) {
  if (zero_support.max_index() >= x_tilde.size()) {
    throw InputError("restrict_to_zero_support: index out of range");
  }
  Vector out = Vector::Zero(x_tilde.size());
  for (int i : zero_support.indices()) out[i] = x_tilde[i];
  return out;
}

Vector residual_noise(const Matrix& a, const Vector& x_restricted) {
  if (a.cols() != x_restricted.size()) {
    throw InputError("residual_noise: inconsistent shapes");
  }
  return a * x_restricted;
}

double estimate_noise_variance(const Vector& y_tilde, Index zero_support_size) {
  if (zero_support_size < 1) {
    throw InputError("estimate_noise_variance: zero support is empty");
  }
  return y_tilde.squaredNorm() / (2.0 * static_cast<double>(zero_support_size));
}

double cfar_threshold(double sigma2_hat, double p_fa) {
  if (!(p_fa > 0.0 && p_fa < 1.0)) throw InputError("cfar_threshold: p_fa must be in (0, 1)");
  if (!(sigma2_hat >= 0.0)) throw InputError("cfar_threshold: sigma2_hat must be nonnegative");
  return std::sqrt(-2.0 * sigma2_hat * std::log(p_fa));
}

SupportSet update_support(const Vector& x_hat, const SupportSet& support, double t_fa) {
  std::vector<int> kept;
  kept.reserve(static_cast<std::size_t>(support.size()));
  for (int i : support.indices()) {
    if (std::abs(x_hat[i]) > t_fa) kept.push_back(i);
  }
  return SupportSet(std::move(kept));
}

Vector threshold_estimate(const Vector& x_hat, const SupportSet& support_updated) {
  if (support_updated.max_index() >= x_hat.size()) {
    throw InputError("threshold_estimate: index out of range");
  }
  Vector out = Vector::Zero(x_hat.size());
  for (int i : support_updated.indices()) out[i] = x_hat[i];
  return out;
}

StoppingDecision stopping_decision(double sigma2_curr, double sigma2_prev) {
  return sigma2_curr > sigma2_prev ? StoppingDecision::continue_loop
                                   : StoppingDecision::terminate;
}

CfarResult iar_lasso_admm_cfar(const SensingProblem& problem, const AdmmConfig& admm_cfg,
                               const CfarConfig& cfar_cfg) {
  admm_cfg.validate();
  cfar_cfg.validate();
  if (problem.a.rows() < 2) throw InputError("iar_lasso_admm_cfar: need at least 2 measurements");
  if (problem.y.size() != problem.a.rows()) {
    throw InputError("iar_lasso_admm_cfar: y length does not match matrix rows");
  }

  const Index n = problem.a.cols();
  // A and rho never change across outer iterations, so one factor serves them all.
  const GramFactor factor = factorize_gram(problem.a, admm_cfg.rho);

  double lambda = cfar_cfg.lambda_init ? *cfar_cfg.lambda_init
                                       : 0.1 * lambda_max(problem.a, problem.y);
  AdmmState state = AdmmState::zero(n);
  double sigma2_prev = 0.0;  // guarantees the first iteration continues
  Vector prev_estimate;
  SupportSet prev_support;
  bool have_prev = false;

  CfarResult result;
  for (int l = 0; l < cfar_cfg.l_max; ++l) {
    const AdmmResult inner = lasso_admm(problem, lambda, admm_cfg, factor, state);
    const SupportSet support = SupportSet::nonzeros_of(inner.z_sparse);
    const SupportSet zero_support = support.complement(n);

    if (support.empty()) {
      result.records.push_back({l, 0.0, 0.0, lambda, 0, 0, inner.iterations});
      result.x_hat = Vector::Zero(n);
      result.support = SupportSet{};
      result.termination = CfarTermination::empty_support;
      return result;
    }
    if (zero_support.empty()) {
      result.records.push_back(
          {l, 0.0, 0.0, lambda, support.size(), support.size(), inner.iterations});
      result.x_hat = inner.z_sparse;
      result.support = support;
      result.termination = CfarTermination::empty_support;
      return result;
    }

    // Residual noise left in the measurements after removing the detected
    // signal; its energy over the zero-support count drives the threshold.
    const Vector y_tilde = problem.y - problem.a * inner.z_sparse;
    const double sigma2 = estimate_noise_variance(y_tilde, zero_support.size());
    const double t_fa = cfar_threshold(sigma2, cfar_cfg.p_fa);
    const SupportSet support_updated = update_support(inner.z_sparse, support, t_fa);
    const Vector estimate = threshold_estimate(inner.z_sparse, support_updated);

    result.records.push_back({l, sigma2, t_fa, lambda, support.size(),
                              support_updated.size(), inner.iterations});

    // After the first update, continuation implies t_fa > lambda in exact
    // arithmetic; when rounding stalls the threshold the loop has reached its
    // numeric fixed point and nothing further can change.
    const bool threshold_stalled = l >= 1 && t_fa <= lambda;
    if (stopping_decision(sigma2, sigma2_prev) == StoppingDecision::terminate ||
        threshold_stalled) {
      const bool use_prev =
          cfar_cfg.final_estimate_policy == FinalEstimatePolicy::previous_iterate &&
          have_prev;
      result.x_hat = use_prev ? prev_estimate : estimate;
      result.support = use_prev ? prev_support : support_updated;
      result.termination = CfarTermination::sigma_decrease;
      return result;
    }

    lambda = t_fa;
    state = AdmmState{estimate, estimate, Vector::Zero(n)};
    sigma2_prev = sigma2;
    prev_estimate = estimate;
    prev_support = support_updated;
    have_prev = true;
  }

  result.x_hat = prev_estimate;
  result.support = prev_support;
  result.termination = CfarTermination::l_max_reached;
  return result;
}

void check_structural_invariants(const CfarResult& result, int l_max) {
  const auto fail = [](const std::string& what) {
    throw std::logic_error("cfar invariant violated: " + what);
  };
  if (result.records.empty()) fail("no outer iterations recorded");
  if (static_cast<int>(result.records.size()) > l_max) fail("outer loop exceeded l_max");
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    const auto& rec = result.records[i];
    if (rec.support_size_after > rec.support_size_before) {
      fail("support grew at outer iteration " + std::to_string(rec.l));
    }
    // lambda values after the first update must be strictly increasing
    if (i >= 2 && !(rec.lambda_used > result.records[i - 1].lambda_used)) {
      fail("lambda not strictly increasing at outer iteration " + std::to_string(rec.l));
    }
  }
  for (Index i = 0; i < result.x_hat.size(); ++i) {
    const bool on_support = result.support.contains(static_cast<int>(i));
    if (on_support && result.x_hat[i] == 0.0) {
      fail("zero estimate on support at index " + std::to_string(i));
    }
    if (!on_support && result.x_hat[i] != 0.0) {
      fail("nonzero estimate off support at index " + std::to_string(i));
    }
  }
}

}  // namespace sparsecfar
