#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "degenkernel/model.hpp"

using namespace degen;

TEST_CASE("ModelParams rejects out-of-range parameters") {
  CHECK_THROWS(ModelParams(2, 3.0, 4.0));
  CHECK_THROWS(ModelParams(3, 2.0, 4.0));
  CHECK_THROWS(ModelParams(3, 3.0, 1.0));  // beta <= alpha - 2
  CHECK_NOTHROW(ModelParams(3, 3.0, 4.0));
  CHECK_NOTHROW(ModelParams(5, 2.5, 0.6));
}

TEST_CASE("ThetaWeight invariants") {
  const ModelParams p(3, 3.0, 4.0);
  CHECK_THROWS(ThetaWeight(p, 2.5));  // theta < N
  const ThetaWeight tw(p, 3.0);
  CHECK(tw.gamma == doctest::Approx(-0.75).epsilon(1e-15));
  CHECK(tw.exponent == doctest::Approx(-0.25).epsilon(1e-15));
}

TEST_CASE("phi_theta point values") {
  const ModelParams p(3, 3.0, 4.0);
  CHECK(phi_theta(ThetaWeight(p, 3.0), p, 0.0) == doctest::Approx(1.0));
  CHECK(phi_theta(ThetaWeight(p, 3.0), p, 1.0) ==
        doctest::Approx(std::pow(2.0, -0.25)).epsilon(1e-14));
  CHECK(phi_theta(ThetaWeight(p, 5.0), p, 2.0) ==
        doctest::Approx(std::pow(9.0, -5.0 / 12.0)).epsilon(1e-14));
}

TEST_CASE("weight exponent is negative for every valid (N, alpha, theta)") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ua(2.01, 10.0), uth(0.0, 6.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 3 + int(rng() % 6);
    const double alpha = ua(rng);
    const double theta = n + uth(rng);
    const ModelParams p(n, alpha, alpha - 1.0);
    const ThetaWeight tw(p, theta);
    CHECK(tw.exponent < 0.0);
  }
}

TEST_CASE("rate_psi values and psi(t)/t monotone") {
  CHECK(rate_psi(4.0, 1.0) == doctest::Approx(1.0));
  CHECK(rate_psi(4.0, 4.0) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(rate_psi(3.0, 8.0) == doctest::Approx(32.0).epsilon(1e-14));
  CHECK_THROWS(rate_psi(4.0, 0.0));
  for (double theta : {3.0, 4.0, 7.5}) {
    double prev = 0.0;
    for (double t = 0.01; t < 100.0; t *= 1.7) {
      const double ratio = rate_psi(theta, t) / t;
      CHECK(ratio >= prev);
      prev = ratio;
    }
  }
}

TEST_CASE("ultracontractivity_K closed form and invariance") {
  CHECK(ultracontractivity_K(4.0, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
  // U(1) = 2 for theta = 4, so U^{-1}(1) = 4 and K(1) = 2; this is also
  // forced by the invariant K(2t)^2 t^{theta/2} = (theta/4)^{theta/2}.
  CHECK(ultracontractivity_K(4.0, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS(ultracontractivity_K(4.0, -1.0));
  // K(2t)^2 t^{theta/2} == (theta/4)^{theta/2} for all t.
  for (double theta : {3.0, 4.0, 5.0}) {
    const double ref = std::pow(theta / 4.0, theta / 2.0);
    for (double t = 1e-3; t < 1e3; t *= 4.0) {
      const double k2t = ultracontractivity_K(theta, 2.0 * t);
      CHECK(k2t * k2t * std::pow(t, theta / 2.0) ==
            doctest::Approx(ref).epsilon(1e-12));
      CHECK(kernel_prefactor(theta, t) ==
            doctest::Approx(k2t * k2t).epsilon(1e-13));
    }
  }
}

TEST_CASE("lyapunov_drift point value and decay to -infinity") {
  const ModelParams p(3, 3.0, 4.0);
  CHECK(lyapunov_drift(p, -1.0, 0.0) == 0.0);
  CHECK(lyapunov_drift(p, -1.0, 1.0) == doctest::Approx(-3.0).epsilon(1e-14));
  // Beyond the crossover the drift is negative and decreasing.
  double prev = lyapunov_drift(p, -1.0, 10.0);
  CHECK(prev < 0.0);
  for (double r = 20.0; r <= 640.0; r *= 2.0) {
    const double d = lyapunov_drift(p, -1.0, r);
    CHECK(d < prev);
    prev = d;
  }
  // Dense-scan supremum: for gamma = -1 the bracket gamma(gamma+1) vanishes
  // and the drift is <= 0 everywhere, so the sup is 0, attained at r = 0.
  double sup = -1e300, arg = -1.0;
  for (long i = 0; i <= 1000000; ++i) {
    const double r = 100.0 * double(i) / 1000000.0;
    const double d = lyapunov_drift(p, -1.0, r);
    if (d > sup) { sup = d; arg = r; }
  }
  CHECK(std::isfinite(sup));
  CHECK(sup == 0.0);
  CHECK(arg == 0.0);
}

TEST_CASE("b_exponent") {
  CHECK(b_exponent(ModelParams(3, 3.0, 4.0)) == doctest::Approx(0.6));
  CHECK(b_exponent(ModelParams(3, 3.0, 3.0)) == doctest::Approx(0.5));
  double prev = 0.0;
  for (double beta = 4.0; beta < 1e6; beta *= 10.0) {
    const double b = b_exponent(ModelParams(3, 3.0, beta));
    CHECK(b > prev);
    CHECK(b < 1.0);
    prev = b;
  }
}

TEST_CASE("groundstate_asymptotic against the closed-form inner integral") {
  const ModelParams p(3, 3.0, 4.0);
  CHECK(groundstate_asymptotic(p, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
  // For alpha=3, beta=4 the integral is (2/3)(sqrt(1+r^3) - sqrt(2)).
  for (double r : {1.5, 2.0, 5.0, 12.0}) {
    const double inner = (2.0 / 3.0) * (std::sqrt(1.0 + r * r * r) - std::sqrt(2.0));
    const double expected = std::pow(r, -1.25) * std::exp(-inner);
    CHECK(groundstate_asymptotic(p, r) ==
          doctest::Approx(expected).epsilon(1e-8));
  }
  CHECK(groundstate_asymptotic(p, 2.0) == doctest::Approx(0.14615).epsilon(1e-3));
  CHECK_THROWS(groundstate_asymptotic(p, 0.5));
}

TEST_CASE("sphere surface area") {
  CHECK(sphere_surface_area(3) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
  CHECK(sphere_surface_area(4) ==
        doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-14));
}
