#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace uavnet {

/// splitmix64 finaliser. Used to derive independent stream seeds from a
/// master seed and a tuple of indices.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Folds a list of words into one seed. Order matters.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept;

/// Stage tags for derive_seed so that stages of one scenario never share a stream.
enum class Stream : std::uint64_t {
  points = 1,
  kmeans = 2,
  fading = 3,
  demand = 4,
  ledger = 5,
  scenario = 6,
};

/// Deterministic random source.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. All distribution transforms below are implemented here rather
/// than taken from <random>, because the standard leaves those
/// implementation-defined and results must match across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t master, Stream stream, std::initializer_list<std::uint64_t> path = {});

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform on (0, 1]; safe as a log() argument.
  double uniform01_open_low();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Uniform integer on [0, n). n must be > 0.
  std::uint64_t uniform_index(std::uint64_t n);

  double standard_normal();
  /// Gamma(shape k, scale 1) via Marsaglia-Tsang, with the k < 1 boost.
  double gamma(double shape);
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace uavnet
