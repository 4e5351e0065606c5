#include <cmath>
#include <vector>

#include "doctest.h"
#include "hetnet/analytic.hpp"

using namespace hetnet;

namespace {

constexpr double kPi = 3.14159265358979323846;

NetworkModel make_model(std::vector<TierParams> tiers, double alpha, double noise = 0.0) {
  NetworkModel m;
  m.tiers = std::move(tiers);
  m.alpha = alpha;
  m.noise = noise;
  return m;
}

// Independent route for the interference constant: the shot-noise exponent
// integral C(alpha) = integral_0^inf 2 pi r / (1 + r^alpha) dr, evaluated by
// quadrature with the analytic power-law remainder beyond the cutoff.
double c_alpha_by_quadrature(double alpha) {
  QuadratureSettings q;
  q.rel_tol = 1e-12;
  q.max_subdivisions = 2000;
  const double cutoff = 1e8;
  const double body =
      integrate([alpha](double r) { return 2.0 * kPi * r / (1.0 + std::pow(r, alpha)); },
                0.0, cutoff, q);
  const double tail = 2.0 * kPi * std::pow(cutoff, 2.0 - alpha) / (alpha - 2.0);
  return body + tail;
}

// Deterministic pseudo-random parameter grid (plain LCG so the cases are
// frozen without depending on the library's RNG).
double next_param(std::uint64_t& state, double lo, double hi) {
  state = state * 6364136223846793005ULL + 1442695040888963407ULL;
  const double u = static_cast<double>(state >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

}  // namespace

TEST_SUITE("analytic") {

TEST_CASE("interference constant C(alpha)") {
  CHECK(c_alpha(4.0) == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-15));
  // alternate closed route 2 pi^2 (2/sqrt(3)) / 3 at alpha = 3
  CHECK(c_alpha(3.0) ==
        doctest::Approx(2.0 * kPi * kPi * (2.0 / std::sqrt(3.0)) / 3.0).epsilon(1e-14));
  CHECK(c_alpha(3.0) == doctest::Approx(7.5976250103520752).epsilon(1e-14));

  for (double alpha : {2.5, 3.0, 3.5, 4.0, 5.0})
    CHECK(c_alpha(alpha) == doctest::Approx(c_alpha_by_quadrature(alpha)).epsilon(1e-7));

  CHECK(c_alpha(2.0001) > 1e4);  // csc pole as alpha -> 2+
  try {
    c_alpha(2.0);
    FAIL("expected AlphaOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AlphaOutOfRange);
  }
}

TEST_CASE("interference Laplace transform") {
  const NetworkModel m = make_model({TierParams{1.0, 1.0 / kPi, 2.0}}, 4.0);
  CHECK(laplace_interference(0.0, m) == 1.0);
  // alpha=4, lambda=1/pi, P=1, s=1: exp(-C(4)/pi) = exp(-pi/2)
  CHECK(laplace_interference(1.0, m) == doctest::Approx(0.20787957635076191).epsilon(1e-12));
  CHECK(laplace_interference(1e6, m) < 1e-12);
  CHECK(laplace_interference(2.0, m) < laplace_interference(1.0, m));

  // doubling the density squares the transform (the exponent is linear in it)
  NetworkModel dense = m;
  dense.tiers[0].density *= 2.0;
  const double l1 = laplace_interference(1.0, m);
  CHECK(laplace_interference(1.0, dense) == doctest::Approx(l1 * l1).epsilon(1e-12));

  CHECK_THROWS_AS(laplace_interference(-1.0, m), std::invalid_argument);
}

TEST_CASE("single-tier no-noise coverage closed form") {
  const NetworkModel m = make_model({TierParams{1.0, 1e-4, 2.0}}, 4.0);
  CHECK(coverage_open_nonoise(m) == doctest::Approx(0.45015815807855303).epsilon(1e-12));

  NetworkModel ten = m;
  ten.tiers[0].threshold = 10.0;
  CHECK(coverage_open_nonoise(ten) == doctest::Approx(0.20131684841794814).epsilon(1e-12));

  // beta -> 1+ approaches 2/pi
  NetworkModel low = m;
  low.tiers[0].threshold = 1.0 + 1e-9;
  CHECK(coverage_open_nonoise(low) == doctest::Approx(2.0 / kPi).epsilon(1e-8));
}

TEST_CASE("equal thresholds collapse to the single-tier value for any K") {
  const double beta = db_to_linear(5.0);
  const double expected = kPi / (c_alpha(3.0) * std::pow(beta, 2.0 / 3.0));
  const NetworkModel k3 = make_model({TierParams{100.0, 1e-6, beta},
                                      TierParams{2.0, 5e-6, beta},
                                      TierParams{1.0, 2e-5, beta}},
                                     3.0);
  CHECK(coverage_open_nonoise(k3) == doctest::Approx(expected).epsilon(1e-12));

  NetworkModel doubled = k3;
  for (TierParams& t : doubled.tiers) t.density *= 2.0;
  CHECK(coverage_open_nonoise(doubled) == doctest::Approx(coverage_open_nonoise(k3)).epsilon(1e-12));
}

TEST_CASE("threshold gate sits exactly at 0 dB") {
  NetworkModel m = make_model({TierParams{1.0, 1e-4, 1.0}}, 4.0);
  try {
    coverage_open_nonoise(m);
    FAIL("expected ThresholdTooLow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ThresholdTooLow);
  }
  m.tiers[0].threshold = 1.0 + 1e-12;
  CHECK_NOTHROW(coverage_open_nonoise(m));
}

TEST_CASE("quadrature coverage matches the closed form without noise") {
  QuadratureSettings q;
  std::uint64_t state = 12345;
  for (double alpha : {2.5, 3.0, 3.5, 4.0, 5.0}) {
    for (int k = 1; k <= 3; ++k) {
      std::vector<TierParams> tiers;
      for (int i = 0; i < k; ++i)
        tiers.push_back(TierParams{next_param(state, 0.1, 1000.0),
                                   next_param(state, 1e-7, 1e-4),
                                   next_param(state, 1.001, 100.0)});
      const NetworkModel m = make_model(std::move(tiers), alpha);
      CHECK(coverage_open(m, q) == doctest::Approx(coverage_open_nonoise(m)).epsilon(1e-7));
    }
  }
}

TEST_CASE("noise strictly reduces coverage and coverage decreases in thresholds") {
  QuadratureSettings q;
  const NetworkModel base = make_model({TierParams{1.0, 1e-4, 2.0}}, 4.0);
  const double no_noise = coverage_open(base, q);

  NetworkModel noisy = base;
  noisy.noise = 1e-6;
  const double with_noise = coverage_open(noisy, q);
  CHECK(with_noise < no_noise);

  NetworkModel noisier = noisy;
  noisier.noise = 1e-5;
  CHECK(coverage_open(noisier, q) < with_noise);

  NetworkModel tighter = base;
  tighter.tiers[0].threshold = 3.0;
  CHECK(coverage_open(tighter, q) < no_noise);
}

TEST_CASE("closed access with every tier allowed is open access") {
  QuadratureSettings q;
  const NetworkModel m = make_model({TierParams{100.0, 1e-6, 2.5},
                                     TierParams{1.0, 5e-6, 1.6}},
                                    3.5, 2e-9);
  const AccessPolicy all = AccessPolicy::closed({1, 2});
  CHECK(coverage_closed(m, all, q) == coverage_open(m, q));

  const LoadVector open_load = load_open(m, q);
  const LoadVector closed_load = load_closed(m, all, q);
  for (std::size_t j = 0; j < open_load.fractions.size(); ++j)
    CHECK(closed_load.fractions[j] == open_load.fractions[j]);

  NetworkModel nonoise = m;
  nonoise.noise = 0.0;
  CHECK(rate_closed(nonoise, all, q) == rate_open(nonoise, q));
  CHECK(max_sir_ccdf(3.0, nonoise, all) == max_sir_ccdf(3.0, nonoise, AccessPolicy::open()));
}

TEST_CASE("closed access scales coverage by the allowed density fraction") {
  QuadratureSettings q;
  const double beta = 2.0;
  const NetworkModel m = make_model({TierParams{3.0, 1e-6, beta},
                                     TierParams{3.0, 4e-6, beta},
                                     TierParams{3.0, 3e-6, beta}},
                                    3.0);
  const double open_cov = coverage_open(m, q);
  const double closed_cov = coverage_closed(m, AccessPolicy::closed({1, 3}), q);
  CHECK(closed_cov / open_cov == doctest::Approx(4e-6 / 8e-6).epsilon(1e-12));
  CHECK(closed_cov < open_cov);
}

TEST_CASE("two-tier closed access worked example") {
  QuadratureSettings q;
  const NetworkModel m = make_model({TierParams{100.0, 1e-5, 2.0},
                                     TierParams{1.0, 5e-5, 2.0}},
                                    4.0);
  // (pi/C(4)) 2^{-1/2} lambda1 sqrt(P1) / (lambda1 sqrt(P1) + lambda2 sqrt(P2))
  CHECK(coverage_closed(m, AccessPolicy::closed({1}), q) ==
        doctest::Approx(0.30010543871903536).epsilon(1e-8));
}

TEST_CASE("closed access only gates the allowed tiers' thresholds") {
  QuadratureSettings q;
  NetworkModel m = make_model({TierParams{100.0, 1e-6, 2.0},
                               TierParams{1.0, 5e-6, 0.5}},
                              4.0);
  CHECK_NOTHROW(coverage_closed(m, AccessPolicy::closed({1}), q));
  try {
    coverage_closed(m, AccessPolicy::closed({1, 2}), q);
    FAIL("expected ThresholdTooLow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ThresholdTooLow);
  }
}

TEST_CASE("load matches the no-noise closed form") {
  QuadratureSettings q;
  q.rel_tol = 1e-12;
  const NetworkModel m = make_model({TierParams{100.0, 1e-6, 3.0},
                                     TierParams{2.0, 4e-6, 1.5},
                                     TierParams{1.0, 1e-5, 2.5}},
                                    3.5);
  const LoadVector load = load_open(m, q);

  const double e = 2.0 / m.alpha;
  double denom = 0.0;
  std::vector<double> weights;
  for (const TierParams& t : m.tiers) {
    weights.push_back(t.density * std::pow(t.power, e) * std::pow(t.threshold, -e));
    denom += weights.back();
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    CHECK(load.fractions[j] == doctest::Approx(weights[j] / denom).epsilon(1e-9));
    sum += load.fractions[j];
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("load is proportional to density under equal power and threshold") {
  QuadratureSettings q;
  const NetworkModel m = make_model({TierParams{2.0, 1e-6, 2.0},
                                     TierParams{2.0, 5e-6, 2.0}},
                                    4.0);
  const LoadVector load = load_open(m, q);
  CHECK(load.fractions[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-9));
  CHECK(load.fractions[1] == doctest::Approx(5.0 / 6.0).epsilon(1e-9));

  const NetworkModel single = make_model({TierParams{1.0, 1e-5, 4.0}}, 4.0);
  CHECK(load_open(single, q).fractions[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("load with noise still sums to one") {
  QuadratureSettings q;
  const NetworkModel m = make_model({TierParams{100.0, 1e-6, 3.0},
                                     TierParams{1.0, 4e-6, 1.5}},
                                    4.0, 1e-7);
  const LoadVector load = load_open(m, q);
  CHECK(load.fractions[0] + load.fractions[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("closed-access load zeroes the disallowed tiers") {
  QuadratureSettings q;
  const NetworkModel m = make_model({TierParams{100.0, 1e-6, 3.0},
                                     TierParams{1.0, 4e-6, 1.5}},
                                    4.0);
  const LoadVector load = load_closed(m, AccessPolicy::closed({2}), q);
  CHECK(load.fractions[0] == 0.0);
  CHECK(load.fractions[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("conditional max-SIR CCDF") {
  const NetworkModel m = make_model({TierParams{1.0, 1e-4, 2.0}}, 4.0);
  const AccessPolicy open = AccessPolicy::open();
  CHECK(max_sir_ccdf(2.0, m, open) == 1.0);
  CHECK(max_sir_ccdf(0.1, m, open) == 1.0);
  CHECK(max_sir_ccdf(8.0, m, open) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(max_sir_ccdf(1e12, m, open) < 1e-5);

  double prev = 1.0;
  for (double t = 2.0; t < 1e4; t *= 1.7) {
    const double cur = max_sir_ccdf(t, m, open);
    CHECK(cur <= prev);
    prev = cur;
  }

  NetworkModel noisy = m;
  noisy.noise = 1e-9;
  CHECK_THROWS_AS(max_sir_ccdf(2.0, noisy, open), std::invalid_argument);
}

TEST_CASE("single-tier rate at the 0 dB limit") {
  QuadratureSettings q;
  const NetworkModel m = make_model({TierParams{1.0, 1e-4, 1.0 + 1e-12}}, 4.0);
  // ln 2 + pi/2
  CHECK(rate_open(m, q) == doctest::Approx(2.2639435073548419).epsilon(1e-6));
}

TEST_CASE("rate with equal thresholds ignores densities and powers") {
  QuadratureSettings q;
  const double beta = db_to_linear(4.0);
  const NetworkModel a = make_model({TierParams{1000.0, 1e-6, beta},
                                     TierParams{1.0, 2e-6, beta}},
                                    3.0);
  const NetworkModel b = make_model({TierParams{3.0, 9e-5, beta},
                                     TierParams{70.0, 1e-7, beta},
                                     TierParams{1.0, 3e-6, beta}},
                                    3.0);
  CHECK(rate_open(a, q) == doctest::Approx(rate_open(b, q)).epsilon(1e-12));
  // and equals the explicit Corollary form log(1+T) + T^{2/a} A(a,T,T)
  const double e = 2.0 / 3.0;
  QuadratureSettings tight;
  tight.rel_tol = 1e-12;
  const double tail =
      (3.0 / 2.0) * integrate([](double v) { return 1.0 / (1.0 + v * std::sqrt(v)); }, 0.0,
                              std::pow(beta, -e), tight);
  CHECK(rate_open(a, q) ==
        doctest::Approx(std::log1p(beta) + std::pow(beta, e) * tail).epsilon(1e-8));
}

TEST_CASE("rate requires the interference-limited model") {
  QuadratureSettings q;
  NetworkModel m = make_model({TierParams{1.0, 1e-4, 2.0}}, 4.0, 1e-9);
  CHECK_THROWS_AS(rate_open(m, q), std::invalid_argument);
}

TEST_CASE("rate equals the integral of the conditional CCDF") {
  QuadratureSettings q;
  const NetworkModel m = make_model({TierParams{100.0, 1e-6, 4.0},
                                     TierParams{1.0, 3e-6, 1.8}},
                                    3.0);
  const AccessPolicy open = AccessPolicy::open();

  QuadratureSettings wide;
  wide.rel_tol = 1e-9;
  wide.abs_tol = 1e-14;
  wide.max_subdivisions = 4000;
  const double beta_min = 1.8;
  const double big = 1e10;
  const double ccdf_integral =
      integrate([&](double x) { return max_sir_ccdf(x, m, open) / (1.0 + x); }, beta_min, big, wide);
  // remaining tail is below ccdf(big) / (2/alpha) / big^... — bounded crudely
  CHECK(rate_open(m, q) ==
        doctest::Approx(std::log1p(beta_min) + ccdf_integral).epsilon(1e-5));
}

TEST_CASE("scale invariance of the interference-limited quantities") {
  QuadratureSettings q;
  const NetworkModel base = make_model({TierParams{100.0, 1e-6, 3.0},
                                        TierParams{1.0, 4e-6, 1.7}},
                                       3.2);
  const AccessPolicy policy = AccessPolicy::closed({2});

  for (double c : {7.3, 0.04}) {
    NetworkModel scaled_density = base;
    NetworkModel scaled_power = base;
    for (TierParams& t : scaled_density.tiers) t.density *= c;
    for (TierParams& t : scaled_power.tiers) t.power *= c;
    for (const NetworkModel* m : {&scaled_density, &scaled_power}) {
      CHECK(coverage_open_nonoise(*m) == doctest::Approx(coverage_open_nonoise(base)).epsilon(1e-12));
      CHECK(coverage_closed(*m, policy, q) == doctest::Approx(coverage_closed(base, policy, q)).epsilon(1e-12));
      CHECK(load_open(*m, q).fractions[0] == doctest::Approx(load_open(base, q).fractions[0]).epsilon(1e-12));
      CHECK(max_sir_ccdf(5.0, *m, AccessPolicy::open()) ==
            doctest::Approx(max_sir_ccdf(5.0, base, AccessPolicy::open())).epsilon(1e-12));
      CHECK(rate_open(*m, q) == doctest::Approx(rate_open(base, q)).epsilon(1e-12));
    }
  }
}

TEST_CASE("noise calibration from the cell edge") {
  // P_edge = 0.9, lambda = 1/pi: d_edge = sqrt(ln 10)
  const double sigma2 = noise_from_edge_snr(1.0, 1.0 / kPi, 4.0, 1.0, 0.9);
  const double d_edge = 1.5174271293851464;
  CHECK(sigma2 == doctest::Approx(std::pow(d_edge, -4.0)).epsilon(1e-12));

  // lambda chosen so d_edge = 1 and every other factor unity
  const double lambda_unit = std::log(10.0) / kPi;
  CHECK(noise_from_edge_snr(1.0, lambda_unit, 4.0, 1.0, 0.9) == doctest::Approx(1.0).epsilon(1e-12));

  // interference-limited limit
  CHECK(noise_from_edge_snr(1.0, 1.0 / kPi, 4.0, 1e15, 0.9) < 1e-14);

  for (double bad : {0.0, 1.0, -0.5, 1.5}) {
    try {
      noise_from_edge_snr(1.0, 1.0, 4.0, 1.0, bad);
      FAIL("expected InvalidQuantile");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidQuantile);
    }
  }
}

TEST_CASE("expression evaluators extend below the gate") {
  QuadratureSettings q;
  NetworkModel m = make_model({TierParams{100.0, 1e-6, db_to_linear(-4.0)},
                               TierParams{1.0, 2e-6, db_to_linear(1.0)}},
                              3.0);
  const AccessPolicy open = AccessPolicy::open();
  const double cov = coverage_expression(m, open, q);
  CHECK(cov == doctest::Approx(coverage_nonoise_expression(m, open)).epsilon(1e-7));
  CHECK(cov > 0.0);
  CHECK(cov < 1.0);  // still sensible at -4 dB
  CHECK_NOTHROW(rate_expression(m, open, q));
  CHECK_NOTHROW(load_expression(m, open, q));
}

}  // TEST_SUITE
