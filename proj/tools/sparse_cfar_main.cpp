#include <CLI11.hpp>

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sparsecfar/bench.hpp"
#include "sparsecfar/cfar_outer.hpp"
#include "sparsecfar/io.hpp"
#include "sparsecfar/lasso_admm.hpp"
#include "sparsecfar/metrics.hpp"
#include "sparsecfar/types.hpp"

namespace {

using namespace sparsecfar;

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct CliOptions {
  BenchParams params;
  std::string out_path;
  std::string final_policy = "previous";
  std::string preset;
  std::vector<double> snr_db_points;
  std::vector<double> sigma_points;
  std::vector<int> k_points;
  std::string matrix_path;
  std::string y_path;
};

void add_solver_flags(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--pfa", opt.params.p_fa, "Target false alarm rate in (0, 1)");
  cmd->add_option("--rho", opt.params.admm.rho, "Augmented Lagrangian parameter");
  cmd->add_option("--alpha", opt.params.admm.alpha, "Relaxation parameter in (0, 2)");
  cmd->add_option("--eps-abs", opt.params.admm.eps_abs, "Absolute tolerance");
  cmd->add_option("--eps-rel", opt.params.admm.eps_rel, "Relative tolerance");
  cmd->add_option("--tmax", opt.params.admm.t_max, "Maximum inner iterations");
  cmd->add_option("--lmax", opt.params.l_max, "Maximum outer iterations");
  cmd->add_option("--lambda-scale", opt.params.lambda_scale,
                  "Initial lambda as a fraction of lambda_max");
  cmd->add_option("--final-policy", opt.final_policy, "Final estimate: previous or current")
      ->check(CLI::IsMember({"previous", "current"}));
}

void add_bench_flags(CLI::App* cmd, CliOptions& opt, bool scalar_sigma = true) {
  cmd->add_option("--m", opt.params.m, "Number of measurements");
  cmd->add_option("--n", opt.params.n, "Ambient dimension");
  if (scalar_sigma) {
    cmd->add_option("--sigma", opt.params.sigma, "Noise standard deviation");
  }
  cmd->add_option("--trials", opt.params.trials, "Trials per sweep point");
  cmd->add_option("--seed", opt.params.seed, "Master seed");
  cmd->add_option("--preset", opt.preset, "Parameter preset: desk or paper")
      ->check(CLI::IsMember({"desk", "paper"}));
  cmd->add_option("--out", opt.out_path, "Output CSV path")->required();
  add_solver_flags(cmd, opt);
}

void finalize_params(const CLI::App* cmd, CliOptions& opt) {
  if (!opt.preset.empty()) {
    // Preset values apply only where the user did not pass an explicit flag.
    BenchParams preset_params = opt.params;
    apply_preset(opt.preset == "desk" ? BenchPreset::desk : BenchPreset::paper,
                 preset_params);
    if (cmd->count("--m") == 0) opt.params.m = preset_params.m;
    if (cmd->count("--n") == 0) opt.params.n = preset_params.n;
    if (cmd->count("--k") == 0) opt.params.k = preset_params.k;
    if (cmd->count("--sigma") == 0) opt.params.sigma = preset_params.sigma;
    if (cmd->count("--pfa") == 0) opt.params.p_fa = preset_params.p_fa;
    if (cmd->count("--trials") == 0) opt.params.trials = preset_params.trials;
  }
  opt.params.policy = opt.final_policy == "previous"
                          ? FinalEstimatePolicy::previous_iterate
                          : FinalEstimatePolicy::current_iterate;
}

void emit_report(const ExperimentReport& report, const std::string& out_path) {
  std::ofstream out(out_path);
  if (!out) throw InputError("cannot open output file: " + out_path);
  write_report_csv(out, report);
  write_report_summary(std::cout, report);
  std::cout << "report written to " << out_path << "\n";
}

int run_solve(const CliOptions& opt) {
  const Matrix a = read_matrix_market_file(opt.matrix_path);
  const Vector y = read_vector_csv_file(opt.y_path, "y");
  const SensingProblem problem{a, y, std::nullopt, std::nullopt};

  CfarConfig cfar;
  cfar.p_fa = opt.params.p_fa;
  cfar.lambda_init = opt.params.lambda_scale * lambda_max(a, y);
  cfar.l_max = opt.params.l_max;
  cfar.final_estimate_policy = opt.params.policy;

  const CfarResult result = iar_lasso_admm_cfar(problem, opt.params.admm, cfar);
  check_structural_invariants(result, cfar.l_max);

  std::cout << "l,lambda,sigma2_hat,t_fa,support_before,support_after,inner_iterations\n";
  for (const auto& rec : result.records) {
    std::cout << rec.l << "," << format_real(rec.lambda_used) << ","
              << format_real(rec.sigma2_hat) << "," << format_real(rec.t_fa) << ","
              << rec.support_size_before << "," << rec.support_size_after << ","
              << rec.inner_iterations << "\n";
  }
  const char* reason = result.termination == CfarTermination::sigma_decrease
                           ? "sigma_decrease"
                           : result.termination == CfarTermination::empty_support
                                 ? "empty_support"
                                 : "l_max_reached";
  std::cout << "termination: " << reason << "\n";
  std::cout << "sparsity order estimate: " << result.support.size() << "\n";
  if (!opt.out_path.empty()) {
    write_vector_csv_file(opt.out_path, "x_hat", result.x_hat);
    std::cout << "estimate written to " << opt.out_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse-signal recovery benchmarks: LASSO-ADMM with an adaptive "
               "CFAR-regularized outer loop"};
  app.require_subcommand(1);

  CliOptions solve_opt;
  CLI::App* solve = app.add_subcommand("solve", "Recover a sparse signal from files");
  solve->add_option("matrix", solve_opt.matrix_path,
                    "Sensing matrix (Matrix Market array format)")
      ->required();
  solve->add_option("y", solve_opt.y_path, "Measurements (single-column CSV, header 'y')")
      ->required();
  solve->add_option("--out", solve_opt.out_path, "Write the estimate CSV here");
  add_solver_flags(solve, solve_opt);

  CLI::App* bench = app.add_subcommand("bench", "Seeded Monte-Carlo benchmarks");
  bench->require_subcommand(1);

  CliOptions fixed_opt;
  CLI::App* fixed = bench->add_subcommand("fixed", "Fixed sparsity order experiment");
  fixed->add_option("--k", fixed_opt.params.k, "True sparsity order");
  add_bench_flags(fixed, fixed_opt);

  CliOptions snr_opt;
  CLI::App* snr = bench->add_subcommand("snr", "Sweep over noise levels");
  snr->add_option("--k", snr_opt.params.k, "True sparsity order");
  snr->add_option("--snr-db", snr_opt.snr_db_points, "SNR points in dB");
  snr->add_option("--sigma", snr_opt.sigma_points, "Noise levels (alternative to --snr-db)");
  add_bench_flags(snr, snr_opt, /*scalar_sigma=*/false);

  CliOptions sparsity_opt;
  CLI::App* sparsity = bench->add_subcommand("sparsity", "Sweep over sparsity orders");
  sparsity->add_option("--k", sparsity_opt.k_points, "Sparsity orders to sweep");
  add_bench_flags(sparsity, sparsity_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (solve->parsed()) {
      finalize_params(solve, solve_opt);
      return run_solve(solve_opt);
    }
    if (fixed->parsed()) {
      finalize_params(fixed, fixed_opt);
      emit_report(run_fixed_sparsity(fixed_opt.params), fixed_opt.out_path);
      return 0;
    }
    if (snr->parsed()) {
      finalize_params(snr, snr_opt);
      if (!snr_opt.snr_db_points.empty() && !snr_opt.sigma_points.empty()) {
        throw InputError("bench snr: pass --snr-db or --sigma, not both");
      }
      if (snr_opt.snr_db_points.empty() && snr_opt.sigma_points.empty()) {
        throw InputError("bench snr: need --snr-db or --sigma points");
      }
      snr_opt.params.sigmas = snr_opt.sigma_points;
      for (const double db : snr_opt.snr_db_points) {
        snr_opt.params.sigmas.push_back(sigma_from_snr_db(db));
      }
      emit_report(run_snr_sweep(snr_opt.params), snr_opt.out_path);
      return 0;
    }
    if (sparsity->parsed()) {
      finalize_params(sparsity, sparsity_opt);
      if (sparsity_opt.k_points.empty()) {
        throw InputError("bench sparsity: need at least one --k point");
      }
      sparsity_opt.params.ks = sparsity_opt.k_points;
      emit_report(run_sparsity_sweep(sparsity_opt.params), sparsity_opt.out_path);
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
