#include <cmath>

#include "doctest.h"
#include "hetnet/quadrature.hpp"

using namespace hetnet;

TEST_SUITE("quadrature") {

TEST_CASE("polynomial and trigonometric integrals") {
  QuadratureSettings q;
  CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0, q) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, 3.14159265358979323846, q) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0, q) == 0.0);
}

TEST_CASE("decaying exponential over a wide interval") {
  QuadratureSettings q;
  q.rel_tol = 1e-12;
  const double v = integrate([](double x) { return std::exp(-x); }, 0.0, 40.0, q);
  CHECK(v == doctest::Approx(1.0 - std::exp(-40.0)).epsilon(1e-12));
}

TEST_CASE("integrable endpoint singularity") {
  QuadratureSettings q;
  q.rel_tol = 1e-9;
  q.max_subdivisions = 2000;
  const double v = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, q);
  CHECK(v == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("subdivision budget exhaustion raises QuadratureFailure") {
  QuadratureSettings q;
  q.rel_tol = 1e-10;
  q.max_subdivisions = 1;
  try {
    integrate([](double x) { return std::exp(-x); }, 0.0, 40.0, q);
    FAIL("expected QuadratureFailure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::QuadratureFailure);
  }
}

TEST_CASE("settings invariants are enforced") {
  QuadratureSettings q;
  q.rel_tol = 0.0;
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, q), std::invalid_argument);
  q = QuadratureSettings{};
  q.abs_tol = -1.0;
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, q), std::invalid_argument);
  q = QuadratureSettings{};
  q.max_subdivisions = 0;
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, q), std::invalid_argument);
}

}  // TEST_SUITE
