#pragma once

#include <cstdint>

namespace hetnet {

/// Counter-based random substream: output n is a fixed 64-bit mix of
/// key + n * gamma (the splitmix64 sequence). Streams for distinct
/// (seed, trial, tier, station) tuples are derived by chained mixing, so any
/// draw is reproducible independently of execution order or thread count.
/// All samplers are written out explicitly (no std::random distributions) to
/// keep byte-level outputs stable across standard libraries.
class SubstreamRng {
 public:
  explicit SubstreamRng(std::uint64_t key) : state_(key) {}

  static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t a,
                                  std::uint64_t b, std::uint64_t c);

  std::uint64_t next_u64();

  /// Uniform draw in the open interval (0, 1).
  double next_uniform();

  /// Unit-mean exponential draw, strictly positive.
  double next_exponential();

 private:
  std::uint64_t state_;
};

/// Exact Poisson sample: Knuth's product method below mean 10, Hormann's
/// PTRD transformed rejection above. Consumes a variable number of draws.
std::int64_t poisson_sample(SubstreamRng& rng, double mean);

}  // namespace hetnet
