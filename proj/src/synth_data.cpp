#include "sparsecfar/synth_data.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

namespace sparsecfar {

double RandomStream::gaussian() {
  // u1 in (0, 1] so the log is finite; only the cosine branch is used.
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t RandomStream::uniform_below(std::uint64_t n) {
  if (n == 0) throw InputError("uniform_below: n must be positive");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return r % n;
}

namespace {

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t block, std::uint64_t trial) {
  std::uint64_t s = mix64(master + 0x9E3779B97F4A7C15ULL);
  s = mix64(s ^ (block + 0xD1B54A32D192ED03ULL));
  s = mix64(s ^ (trial + 0x8CB92BA72F3D8DD7ULL));
  return s;
}

void SynthSpec::validate() const {
  if (m < 1 || n < 1) throw InputError("SynthSpec: m and n must be at least 1");
  if (k < 0 || k > n) throw InputError("SynthSpec: k must satisfy 0 <= k <= n");
  if (!(sigma >= 0.0)) throw InputError("SynthSpec: sigma must be nonnegative");
}

std::pair<Vector, SupportSet> generate_spike_signal(int n, int k, RandomStream& rng) {
  if (n < 1) throw InputError("generate_spike_signal: n must be at least 1");
  if (k < 0 || k > n) throw InputError("generate_spike_signal: k must satisfy 0 <= k <= n");

  // Partial Fisher-Yates over the index pool: first k entries are the support.
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < k; ++i) {
    const auto j = i + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  SupportSet support(std::vector<int>(pool.begin(), pool.begin() + k));

  Vector x = Vector::Zero(n);
  std::vector<double> signs(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) signs[static_cast<std::size_t>(i)] = rng.coin() ? 1.0 : -1.0;
  // Signs are drawn in pool order (the order positions were selected).
  for (int i = 0; i < k; ++i) x[pool[static_cast<std::size_t>(i)]] = signs[static_cast<std::size_t>(i)];
  return {std::move(x), std::move(support)};
}

Matrix generate_sensing_matrix(int m, int n, RandomStream& rng) {
  if (m < 1 || n < 1) throw InputError("generate_sensing_matrix: m and n must be at least 1");
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  Matrix a(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      a(i, j) = scale * rng.gaussian();
    }
  }
  for (int j = 0; j < n; ++j) {
    a.col(j) /= a.col(j).norm();
  }
  return a;
}

SensingProblem synthesize(const SynthSpec& spec) {
  spec.validate();
  RandomStream rng(spec.seed);
  auto [x_true, support] = generate_spike_signal(spec.n, spec.k, rng);
  Matrix a = generate_sensing_matrix(spec.m, spec.n, rng);
  Vector noise(spec.m);
  for (int i = 0; i < spec.m; ++i) noise[i] = spec.sigma * rng.gaussian();
  Vector y = a * x_true + noise;
  return SensingProblem{std::move(a), std::move(y), std::move(x_true), spec.sigma};
}

}  // namespace sparsecfar
