#include "uavnet/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace uavnet {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t h = mix64(master);
  for (std::uint64_t word : path) {
    h = mix64(h ^ mix64(word + 0x632be59bd9b4e019ULL));
  }
  return h;
}

Rng::Rng(std::uint64_t master, Stream stream, std::initializer_list<std::uint64_t> path)
    : engine_(0) {
  std::uint64_t h = derive_seed(master, {static_cast<std::uint64_t>(stream)});
  for (std::uint64_t word : path) {
    h = derive_seed(h, {word});
  }
  engine_.seed(h);
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform01_open_low() {
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

std::uint64_t Rng::uniform_index(std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("uniform_index: empty range");
  }
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double Rng::standard_normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  // Marsaglia polar method.
  double u, v, s;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * f;
  has_spare_normal_ = true;
  return u * f;
}

double Rng::gamma(double shape) {
  if (!(shape > 0.0)) {
    throw std::invalid_argument("gamma: shape must be positive");
  }
  if (shape < 1.0) {
    const double g = gamma(shape + 1.0);
    return g * std::pow(uniform01_open_low(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = standard_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform01_open_low();
    if (u < 1.0 - 0.0331 * x * x * x * x) {
      return d * v;
    }
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
      return d * v;
    }
  }
}

std::uint64_t Rng::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("poisson: mean must be finite and non-negative");
  }
  if (mean == 0.0) {
    return 0;
  }
  // exp(-mean) underflows past ~745; split into independent chunks.
  constexpr double kChunk = 500.0;
  std::uint64_t total = 0;
  double remaining = mean;
  while (remaining > 0.0) {
    const double lambda = remaining > kChunk ? kChunk : remaining;
    remaining -= lambda;
    // Inversion by sequential search.
    const double u = uniform01();
    double p = std::exp(-lambda);
    double cdf = p;
    std::uint64_t k = 0;
    while (u >= cdf) {
      ++k;
      p *= lambda / static_cast<double>(k);
      const double next = cdf + p;
      if (next == cdf) {
        break;
      }
      cdf = next;
    }
    total += k;
  }
  return total;
}

}  // namespace uavnet
