#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "hetnet/rng.hpp"

using namespace hetnet;

TEST_SUITE("rng") {

TEST_CASE("substreams are reproducible and distinct") {
  const std::uint64_t key = SubstreamRng::derive_key(42, 7, 1, 3);
  SubstreamRng a(key);
  SubstreamRng b(key);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  SubstreamRng c(SubstreamRng::derive_key(42, 8, 1, 3));
  SubstreamRng d(SubstreamRng::derive_key(42, 7, 1, 3));
  int differing = 0;
  for (int i = 0; i < 64; ++i)
    if (c.next_u64() != d.next_u64()) ++differing;
  CHECK(differing == 64);
}

TEST_CASE("uniforms live strictly inside (0,1) with the right mean") {
  SubstreamRng rng(SubstreamRng::derive_key(1, 2, 3, 4));
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.next_uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  const double mean = sum / n;
  const double tol = 4.0 / std::sqrt(12.0 * n);  // 4 sigma of the sample mean
  CHECK(std::abs(mean - 0.5) < tol);
}

TEST_CASE("exponential draws have unit mean") {
  SubstreamRng rng(SubstreamRng::derive_key(5, 6, 7, 8));
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = rng.next_exponential();
    REQUIRE(e > 0.0);
    sum += e;
  }
  CHECK(std::abs(sum / n - 1.0) < 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("poisson mean and variance in both sampler regimes") {
  for (double mean : {0.5, 3.5, 9.5, 40.0, 5000.0}) {
    SubstreamRng rng(SubstreamRng::derive_key(9, 10, 11, static_cast<std::uint64_t>(mean)));
    const int n = mean > 100.0 ? 5000 : 20000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const std::int64_t k = poisson_sample(rng, mean);
      REQUIRE(k >= 0);
      sum += static_cast<double>(k);
      sum_sq += static_cast<double>(k) * static_cast<double>(k);
    }
    const double sample_mean = sum / n;
    const double sample_var = sum_sq / n - sample_mean * sample_mean;
    CHECK(std::abs(sample_mean - mean) < 4.0 * std::sqrt(mean / n));
    // variance equals the mean; the estimator's sd is roughly mean*sqrt(2/n)
    CHECK(std::abs(sample_var - mean) < 5.0 * mean * std::sqrt(2.0 / n) + 0.1);
  }
  SubstreamRng rng(1);
  CHECK(poisson_sample(rng, 0.0) == 0);
}

}  // TEST_SUITE
