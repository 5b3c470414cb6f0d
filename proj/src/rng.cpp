#include "decompound/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace decompound {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// splitmix64 finalizer; good avalanche for seed derivation.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

RngStream::RngStream(std::uint64_t seed) : identity_(mix64(seed)), gen_(identity_) {}

RngStream::RngStream(std::uint64_t identity, int) : identity_(identity), gen_(identity_) {}

RngStream RngStream::substream(std::uint64_t index) const {
  return RngStream(mix64(identity_ ^ mix64(index + 0x632be59bd9b4e019ULL)), 0);
}

std::uint64_t RngStream::next_u64() { return gen_(); }

double RngStream::uniform01() {
  // 53-bit mantissa in [0, 1)
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_pos() {
  return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
}

double RngStream::standard_normal() {
  // Box-Muller without caching: one value per call, fully replayable.
  const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
  return r * std::cos(kTwoPi * uniform01());
}

double RngStream::normal(double mean, double sd) { return mean + sd * standard_normal(); }

double RngStream::standard_gamma(double shape) {
  if (shape < 1.0) {
    // boost via Gamma(shape+1) and a uniform power
    const double u = uniform_pos();
    return standard_gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = standard_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_pos();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RngStream::gamma(double shape, double scale) { return scale * standard_gamma(shape); }

double RngStream::beta(double alpha, double beta) {
  const double x = standard_gamma(alpha);
  const double y = standard_gamma(beta);
  return x / (x + y);
}

double RngStream::cauchy(double location, double scale) {
  return location + scale * std::tan(M_PI * (uniform01() - 0.5));
}

long RngStream::poisson(double mean) {
  if (mean < 0.0) throw std::invalid_argument("poisson mean must be nonnegative");
  if (mean == 0.0) return 0;
  if (mean > 30.0) {
    // Poisson(a+b) = Poisson(a) + Poisson(b); split to keep Knuth's loop short.
    const double half = mean / 2.0;
    return poisson(half) + poisson(mean - half);
  }
  // Knuth multiplication method
  const double limit = std::exp(-mean);
  long k = 0;
  double prod = uniform_pos();
  while (prod > limit) {
    ++k;
    prod *= uniform_pos();
  }
  return k;
}

} // namespace decompound
