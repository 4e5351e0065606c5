#include "hetnet/rng.hpp"

#include <cmath>

namespace hetnet {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t combine(std::uint64_t h, std::uint64_t v) {
  return mix64(h + kGamma + v);
}

}  // namespace

std::uint64_t SubstreamRng::derive_key(std::uint64_t seed, std::uint64_t a,
                                       std::uint64_t b, std::uint64_t c) {
  return combine(combine(combine(mix64(seed + kGamma), a), b), c);
}

std::uint64_t SubstreamRng::next_u64() {
  state_ += kGamma;
  return mix64(state_);
}

double SubstreamRng::next_uniform() {
  // 53 random bits, offset by half an ulp so the result is never 0 or 1.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double SubstreamRng::next_exponential() {
  return -std::log(next_uniform());
}

namespace {

// Knuth's product method; the expected number of uniforms is mean + 1.
std::int64_t poisson_small(SubstreamRng& rng, double mean) {
  const double limit = std::exp(-mean);
  std::int64_t k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= rng.next_uniform();
  } while (p > limit);
  return k - 1;
}

// Hormann (1993), "The transformed rejection method for generating Poisson
// random variables", algorithm PTRD. Valid for mean >= 10.
std::int64_t poisson_ptrd(SubstreamRng& rng, double mean) {
  const double smu = std::sqrt(mean);
  const double b = 0.931 + 2.53 * smu;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mu = std::log(mean);

  for (;;) {
    double u = rng.next_uniform() - 0.5;
    double v = rng.next_uniform();
    const double us = 0.5 - std::abs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    const double k = kf;
    const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
    const double rhs = k * log_mu - mean - std::lgamma(k + 1.0);
    if (lhs <= rhs) return static_cast<std::int64_t>(kf);
  }
}

}  // namespace

std::int64_t poisson_sample(SubstreamRng& rng, double mean) {
  if (mean <= 0.0) return 0;
  if (mean < 10.0) return poisson_small(rng, mean);
  return poisson_ptrd(rng, mean);
}

}  // namespace hetnet
