#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sparsecfar/cfar_outer.hpp"
#include "sparsecfar/lasso_admm.hpp"
#include "sparsecfar/types.hpp"

namespace sparsecfar {

/// Parameters shared by all benchmark experiments.
struct BenchParams {
  int m = 256;
  int n = 1024;
  int k = 30;
  double sigma = 0.05;
  std::vector<double> sigmas;  ///< per-point noise levels for the SNR sweep
  std::vector<int> ks;         ///< per-point sparsity orders for the sparsity sweep
  double p_fa = 1e-3;
  AdmmConfig admm{};
  int l_max = 50;
  double lambda_scale = 0.1;
  FinalEstimatePolicy policy = FinalEstimatePolicy::previous_iterate;
  int trials = 20;
  std::uint64_t seed = 1;
};

/// Named parameter presets. Desk scale finishes in seconds; paper scale
/// matches the full-size experiment setup and can take minutes.
enum class BenchPreset { desk, paper };
void apply_preset(BenchPreset preset, BenchParams& params);

/// One sweep point: the problem shape generated for a group of trials.
struct BlockSpec {
  int block = 0;
  int k_true = 0;
  double sigma = 0.0;
};

/// Per-trial measurements for one algorithm.
struct TrialRow {
  int block = 0;
  int trial = 0;
  std::uint64_t trial_seed = 0;
  std::string algorithm;  // "lasso_admm" or "iar_cfar"
  int k_hat = 0;
  double mse = 0.0;
  double objective = 0.0;
  long inner_iterations = 0;
  int outer_iterations = 0;
  double wall_time_s = 0.0;  // measured; reported on stdout, never in the CSV
};

struct ExperimentReport {
  std::string experiment;  // "fixed", "snr" or "sparsity"
  BenchParams params;
  std::vector<BlockSpec> blocks;
  std::vector<TrialRow> rows;  // block-major, trial order, lasso_admm then iar_cfar
};

/// Mean and sample standard deviation of each metric over the trials of one
/// (block, algorithm) group.
struct AggregateRow {
  int block = 0;
  std::string algorithm;
  std::string kind;  // "mean" or "stddev"
  double k_hat = 0.0;
  double mse = 0.0;
  double objective = 0.0;
  double inner_iterations = 0.0;
  double outer_iterations = 0.0;
};

std::vector<AggregateRow> aggregate_rows(const ExperimentReport& report);

/// Single-block experiment at fixed (k, sigma).
ExperimentReport run_fixed_sparsity(const BenchParams& params);

/// One block per noise level in params.sigmas.
ExperimentReport run_snr_sweep(const BenchParams& params);

/// One block per sparsity order in params.ks; every k must be < m.
ExperimentReport run_sparsity_sweep(const BenchParams& params);

/// Deterministic CSV serialization: config echo on every row, per-trial rows,
/// then per-block mean/stddev rows. Identical params and seed give identical
/// bytes regardless of thread count.
void write_report_csv(std::ostream& out, const ExperimentReport& report);
std::string report_to_csv(const ExperimentReport& report);

/// Human-readable per-block summary, including measured wall time.
void write_report_summary(std::ostream& out, const ExperimentReport& report);

/// Thread budget for trial parallelism: SPARSE_CFAR_THREADS, where 0 or unset
/// means one thread per hardware core, capped by the job count.
int resolve_thread_count(int jobs);

}  // namespace sparsecfar
