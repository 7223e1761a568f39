#include "sparsecfar/bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <utility>

#include "sparsecfar/io.hpp"
#include "sparsecfar/metrics.hpp"
#include "sparsecfar/synth_data.hpp"

namespace sparsecfar {

namespace {

constexpr const char* kAlgoAdmm = "lasso_admm";
constexpr const char* kAlgoIar = "iar_cfar";

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void validate_params(const BenchParams& params) {
  if (params.m < 2 || params.n < 1) throw InputError("bench: m must be >= 2 and n >= 1");
  if (params.trials < 1) throw InputError("bench: trials must be at least 1");
  if (!(params.p_fa > 0.0 && params.p_fa < 1.0)) throw InputError("bench: pfa must be in (0, 1)");
  if (!(params.lambda_scale >= 0.0)) throw InputError("bench: lambda-scale must be nonnegative");
  if (params.l_max < 1) throw InputError("bench: lmax must be at least 1");
  params.admm.validate();
}

/// Runs both algorithms on the trial's problem instance.
std::pair<TrialRow, TrialRow> run_trial(const BenchParams& params, const BlockSpec& block,
                                        int trial) {
  const std::uint64_t trial_seed =
      derive_seed(params.seed, static_cast<std::uint64_t>(block.block),
                  static_cast<std::uint64_t>(trial));
  const SynthSpec spec{params.m, params.n, block.k_true, block.sigma, trial_seed};
  const SensingProblem problem = synthesize(spec);
  const SupportSet truth = SupportSet::nonzeros_of(*problem.x_true);
  const double lambda0 = params.lambda_scale * lambda_max(problem.a, problem.y);

  TrialRow plain{block.block, trial, trial_seed, kAlgoAdmm};
  {
    const auto t0 = std::chrono::steady_clock::now();
    const GramFactor factor = factorize_gram(problem.a, params.admm.rho);
    const AdmmResult res = lasso_admm(problem, lambda0, params.admm, factor,
                                      AdmmState::zero(params.n));
    plain.wall_time_s = elapsed_seconds(t0);
    const SupportSet est = SupportSet::nonzeros_of(res.z_sparse);
    plain.k_hat = est.size();
    plain.mse = mse(res.z_sparse, *problem.x_true);
    plain.objective = objective(problem.a, problem.y, res.z_sparse, lambda0);
    plain.inner_iterations = res.iterations;
    plain.outer_iterations = 0;
  }

  TrialRow iar{block.block, trial, trial_seed, kAlgoIar};
  {
    CfarConfig cfar;
    cfar.p_fa = params.p_fa;
    cfar.lambda_init = lambda0;
    cfar.l_max = params.l_max;
    cfar.final_estimate_policy = params.policy;

    const auto t0 = std::chrono::steady_clock::now();
    const CfarResult res = iar_lasso_admm_cfar(problem, params.admm, cfar);
    iar.wall_time_s = elapsed_seconds(t0);
    check_structural_invariants(res, cfar.l_max);
    iar.k_hat = res.support.size();
    iar.mse = mse(res.x_hat, *problem.x_true);
    iar.objective = objective(problem.a, problem.y, res.x_hat, lambda0);
    long inner_total = 0;
    for (const auto& rec : res.records) inner_total += rec.inner_iterations;
    iar.inner_iterations = inner_total;
    iar.outer_iterations = static_cast<int>(res.records.size());
  }

  return {std::move(plain), std::move(iar)};
}

ExperimentReport run_blocks(std::string experiment, const BenchParams& params,
                            std::vector<BlockSpec> blocks) {
  validate_params(params);
  ExperimentReport report;
  report.experiment = std::move(experiment);
  report.params = params;
  report.blocks = std::move(blocks);

  const int jobs = static_cast<int>(report.blocks.size()) * params.trials;
  report.rows.resize(static_cast<std::size_t>(jobs) * 2);

  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  const auto worker = [&] {
    for (;;) {
      const int job = next.fetch_add(1);
      if (job >= jobs || failed.load()) return;
      const int block_index = job / params.trials;
      const int trial = job % params.trials;
      try {
        auto [plain, iar] = run_trial(params, report.blocks[static_cast<std::size_t>(block_index)], trial);
        report.rows[static_cast<std::size_t>(job) * 2] = std::move(plain);
        report.rows[static_cast<std::size_t>(job) * 2 + 1] = std::move(iar);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  const int threads = resolve_thread_count(jobs);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return report;
}

void append_metric_columns(std::ostream& out, double k_hat, double mse_value,
                           double objective_value, double inner, double outer,
                           bool integral) {
  if (integral) {
    out << "," << static_cast<long>(k_hat) << "," << format_real(mse_value) << ","
        << format_real(objective_value) << "," << static_cast<long>(inner) << ","
        << static_cast<long>(outer);
  } else {
    out << "," << format_real(k_hat) << "," << format_real(mse_value) << ","
        << format_real(objective_value) << "," << format_real(inner) << ","
        << format_real(outer);
  }
}

}  // namespace

void apply_preset(BenchPreset preset, BenchParams& params) {
  switch (preset) {
    case BenchPreset::desk:
      params.m = 256;
      params.n = 1024;
      params.k = 30;
      params.sigma = 0.05;
      params.p_fa = 1e-3;
      params.trials = 20;
      break;
    case BenchPreset::paper:
      params.m = 1024;
      params.n = 4096;
      params.k = 150;
      params.sigma = 0.05;
      params.p_fa = 1e-3;
      params.trials = 50;
      break;
  }
}

std::vector<AggregateRow> aggregate_rows(const ExperimentReport& report) {
  std::vector<AggregateRow> out;
  for (const auto& block : report.blocks) {
    for (const char* algo : {kAlgoAdmm, kAlgoIar}) {
      std::vector<const TrialRow*> group;
      for (const auto& row : report.rows) {
        if (row.block == block.block && row.algorithm == algo) group.push_back(&row);
      }
      const double count = static_cast<double>(group.size());
      AggregateRow mean{block.block, algo, "mean"};
      for (const TrialRow* row : group) {
        mean.k_hat += row->k_hat;
        mean.mse += row->mse;
        mean.objective += row->objective;
        mean.inner_iterations += static_cast<double>(row->inner_iterations);
        mean.outer_iterations += row->outer_iterations;
      }
      mean.k_hat /= count;
      mean.mse /= count;
      mean.objective /= count;
      mean.inner_iterations /= count;
      mean.outer_iterations /= count;

      AggregateRow stddev{block.block, algo, "stddev"};
      if (group.size() > 1) {
        for (const TrialRow* row : group) {
          stddev.k_hat += (row->k_hat - mean.k_hat) * (row->k_hat - mean.k_hat);
          stddev.mse += (row->mse - mean.mse) * (row->mse - mean.mse);
          stddev.objective +=
              (row->objective - mean.objective) * (row->objective - mean.objective);
          stddev.inner_iterations +=
              (static_cast<double>(row->inner_iterations) - mean.inner_iterations) *
              (static_cast<double>(row->inner_iterations) - mean.inner_iterations);
          stddev.outer_iterations += (row->outer_iterations - mean.outer_iterations) *
                                     (row->outer_iterations - mean.outer_iterations);
        }
        const double denom = count - 1.0;
        stddev.k_hat = std::sqrt(stddev.k_hat / denom);
        stddev.mse = std::sqrt(stddev.mse / denom);
        stddev.objective = std::sqrt(stddev.objective / denom);
        stddev.inner_iterations = std::sqrt(stddev.inner_iterations / denom);
        stddev.outer_iterations = std::sqrt(stddev.outer_iterations / denom);
      }
      out.push_back(std::move(mean));
      out.push_back(std::move(stddev));
    }
  }
  return out;
}

ExperimentReport run_fixed_sparsity(const BenchParams& params) {
  return run_blocks("fixed", params, {BlockSpec{0, params.k, params.sigma}});
}

ExperimentReport run_snr_sweep(const BenchParams& params) {
  if (params.sigmas.empty()) throw InputError("bench snr: need at least one SNR point");
  std::vector<BlockSpec> blocks;
  for (std::size_t i = 0; i < params.sigmas.size(); ++i) {
    if (!(params.sigmas[i] > 0.0)) throw InputError("bench snr: sigma must be positive");
    blocks.push_back(BlockSpec{static_cast<int>(i), params.k, params.sigmas[i]});
  }
  return run_blocks("snr", params, std::move(blocks));
}

ExperimentReport run_sparsity_sweep(const BenchParams& params) {
  if (params.ks.empty()) throw InputError("bench sparsity: need at least one k point");
  std::vector<BlockSpec> blocks;
  for (std::size_t i = 0; i < params.ks.size(); ++i) {
    if (params.ks[i] < 0 || params.ks[i] >= params.m) {
      throw InputError("bench sparsity: every k must satisfy 0 <= k < m");
    }
    blocks.push_back(BlockSpec{static_cast<int>(i), params.ks[i], params.sigma});
  }
  return run_blocks("sparsity", params, std::move(blocks));
}

void write_report_csv(std::ostream& out, const ExperimentReport& report) {
  const BenchParams& p = report.params;
  out << "experiment,m,n,p_fa,rho,alpha,eps_abs,eps_rel,t_max,l_max,lambda_scale,"
         "final_policy,trials,master_seed,block,k_true,sigma,snr_db,row_kind,trial,"
         "trial_seed,algorithm,k_hat,mse,objective,inner_iterations,outer_iterations\n";

  std::ostringstream config;
  config << report.experiment << "," << p.m << "," << p.n << "," << format_real(p.p_fa)
         << "," << format_real(p.admm.rho) << "," << format_real(p.admm.alpha) << ","
         << format_real(p.admm.eps_abs) << "," << format_real(p.admm.eps_rel) << ","
         << p.admm.t_max << "," << p.l_max << "," << format_real(p.lambda_scale) << ","
         << (p.policy == FinalEstimatePolicy::previous_iterate ? "previous" : "current")
         << "," << p.trials << "," << p.seed;
  const std::string config_echo = config.str();

  const auto block_columns = [&](const BlockSpec& block) {
    std::ostringstream s;
    s << "," << block.block << "," << block.k_true << "," << format_real(block.sigma)
      << ","
      << (block.sigma > 0.0 ? format_real(snr_db(block.sigma)) : std::string("inf"));
    return s.str();
  };

  const std::vector<AggregateRow> aggregates = aggregate_rows(report);
  for (const auto& block : report.blocks) {
    const std::string block_echo = block_columns(block);
    for (const auto& row : report.rows) {
      if (row.block != block.block) continue;
      out << config_echo << block_echo << ",trial," << row.trial << "," << row.trial_seed
          << "," << row.algorithm;
      append_metric_columns(out, row.k_hat, row.mse, row.objective,
                            static_cast<double>(row.inner_iterations),
                            row.outer_iterations, /*integral=*/true);
      out << "\n";
    }
    for (const auto& agg : aggregates) {
      if (agg.block != block.block) continue;
      out << config_echo << block_echo << "," << agg.kind << ",,," << agg.algorithm;
      append_metric_columns(out, agg.k_hat, agg.mse, agg.objective, agg.inner_iterations,
                            agg.outer_iterations, /*integral=*/false);
      out << "\n";
    }
  }
}

std::string report_to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  write_report_csv(out, report);
  return out.str();
}

void write_report_summary(std::ostream& out, const ExperimentReport& report) {
  const std::vector<AggregateRow> aggregates = aggregate_rows(report);
  for (const auto& block : report.blocks) {
    double wall_admm = 0.0, wall_iar = 0.0;
    for (const auto& row : report.rows) {
      if (row.block != block.block) continue;
      (row.algorithm == kAlgoAdmm ? wall_admm : wall_iar) += row.wall_time_s;
    }
    out << "block " << block.block << " (k=" << block.k_true << ", sigma=" << block.sigma
        << "):\n";
    for (const auto& agg : aggregates) {
      if (agg.block != block.block || agg.kind != "mean") continue;
      const double wall = agg.algorithm == kAlgoAdmm ? wall_admm : wall_iar;
      out << "  " << agg.algorithm << ": mean k_hat=" << agg.k_hat
          << " mean mse=" << agg.mse << " mean objective=" << agg.objective
          << " mean inner_iters=" << agg.inner_iterations
          << " wall_time_total_s=" << wall << "\n";
    }
  }
}

int resolve_thread_count(int jobs) {
  long requested = 0;
  if (const char* env = std::getenv("SPARSE_CFAR_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    requested = std::strtol(env, &end, 10);
    if (end == env || requested < 0) requested = 0;
  }
  long threads = requested;
  if (threads == 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = hw == 0 ? 1 : static_cast<long>(hw);
  }
  if (threads > jobs) threads = jobs;
  return static_cast<int>(threads < 1 ? 1 : threads);
}

}  // namespace sparsecfar
