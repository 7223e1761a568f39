#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "sparsecfar/lasso_admm.hpp"
#include "sparsecfar/support_set.hpp"
#include "sparsecfar/types.hpp"

namespace sparsecfar {

/// Seeded random stream with the sampling routines pinned in this library.
///
/// The engine (mt19937_64) is bit-exact by the standard, but std::
/// distributions are implementation-defined, so uniform and Gaussian sampling
/// are fixed here to keep generated problems identical across toolchains.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; consumes exactly two uniform draws.
  double gaussian();

  /// Uniform integer in [0, n), unbiased via rejection.
  std::uint64_t uniform_below(std::uint64_t n);

  /// Fair coin.
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

/// Splitmix-style mixing used to derive independent substreams from
/// (master seed, block, trial). Trial results are therefore identical under
/// any scheduling of parallel trials.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t block, std::uint64_t trial);

/// Parameters of one synthetic problem instance.
struct SynthSpec {
  int m = 0;            ///< measurements
  int n = 0;            ///< ambient dimension
  int k = 0;            ///< true sparsity order
  double sigma = 0.0;   ///< noise standard deviation
  std::uint64_t seed = 0;

  void validate() const;
};

/// Signal with exactly k components set to +-1 (fair signs) at positions drawn
/// uniformly without replacement; all other components are exactly zero.
std::pair<Vector, SupportSet> generate_spike_signal(int n, int k, RandomStream& rng);

/// Sensing matrix with i.i.d. N(0, 1/m) entries drawn in row-major order, then
/// each column rescaled to exact unit Euclidean norm.
Matrix generate_sensing_matrix(int m, int n, RandomStream& rng);

/// Full problem instance y = A x_true + noise, fully determined by spec.seed.
/// Draw order is fixed: support positions, spike signs, matrix entries
/// (row-major), then noise.
SensingProblem synthesize(const SynthSpec& spec);

}  // namespace sparsecfar
