#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "twmo/arith.hpp"
#include "twmo/error.hpp"
#include "twmo/kernels.hpp"
#include "twmo/special.hpp"

using namespace twmo;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

TEST_CASE("W1 against the regularized incomplete gamma") {
  for (int weight : {2, 4, 12, 24}) {
    const kernels::KernelSuite suite(weight);
    for (double x = 1e-4; x < 20.0; x *= 1.17) {
      const double expected = boost::math::gamma_q(weight / 2.0, kTwoPi * x);
      CHECK(std::abs(kernels::w1(suite, x) - expected) <= 1e-14 + 1e-13 * expected);
    }
  }
}

TEST_CASE("W2 against quadrature of Q(a, 2πt)/t") {
  boost::math::quadrature::exp_sinh<double> integrator;
  for (int weight : {2, 12}) {
    const kernels::KernelSuite suite(weight);
    for (double y : {0.01, 0.1, 0.5, 1.0, 3.0}) {
      const double a = weight / 2.0;
      const double expected = integrator.integrate(
          [&](double u) { return boost::math::gamma_q(a, kTwoPi * (y + u)) / (y + u); });
      CHECK(std::abs(kernels::w2(suite, y) - expected) <= 1e-11 * (1.0 + expected));
      CHECK(std::abs(kernels::w2_quadrature(suite, y) - expected) <= 1e-10 * (1.0 + expected));
    }
  }
}

TEST_CASE("kernels against contour integrals") {
  for (int weight : {2, 12}) {
    const kernels::KernelSuite suite(weight);
    for (double x : {0.1, 1.0, 10.0}) {
      CHECK(std::abs(kernels::w1(suite, x) - kernels::w1_contour(suite, x)) < 1e-8);
      CHECK(std::abs(kernels::w2(suite, x) - kernels::w2_contour(suite, x)) < 1e-8);
    }
    CHECK(std::abs(kernels::w1(suite, 1e-12) - 1.0) < 1e-10);
  }
}

TEST_CASE("special functions against Boost") {
  for (double x : {0.01, 0.5, 1.0, 10.0, 100.0}) {
    CHECK(special::expint_e1(x) == doctest::Approx(boost::math::expint(1, x)).epsilon(1e-13));
    for (int a : {1, 3, 6}) {
      CHECK(special::gamma_q_int(a, x) ==
            doctest::Approx(boost::math::gamma_q(static_cast<double>(a), x)).epsilon(1e-13));
      const auto q = special::gamma_q(std::complex<double>(a + 0.05, 0.0), x);
      CHECK(q.real() == doctest::Approx(boost::math::gamma_q(a + 0.05, x)).epsilon(1e-11));
      CHECK(std::abs(q.imag()) < 1e-14);
    }
  }
  for (double r : {0.3, 1.0, 2.5, 7.0, 30.0}) {
    const auto lg = special::log_gamma(std::complex<double>(r, 0.0));
    CHECK(lg.real() == doctest::Approx(boost::math::lgamma(r)).epsilon(1e-13));
  }
  // Γ(1/2 + it) has modulus sqrt(π / cosh(πt))
  for (double t : {0.5, 3.0, 40.0}) {
    const auto lg = special::log_gamma(std::complex<double>(0.5, t));
    CHECK(lg.real() == doctest::Approx(0.5 * std::log(std::numbers::pi / std::cosh(std::numbers::pi * t))).epsilon(1e-12));
  }
}

TEST_CASE("tail bound dominates the discarded terms") {
  const auto sieve = arith::SieveTables::build(400000);
  for (int weight : {2, 12}) {
    const kernels::KernelSuite suite(weight);
    for (double scale : {8.0, 50.0, 300.0}) {
      const std::size_t M = kernels::truncation_length(suite, scale, 1e-8);
      CHECK(kernels::tail_bound(suite, M, scale) < 1e-8);
      if (M > 1) CHECK(kernels::tail_bound(suite, M - 1, scale) >= 1e-8);
      double tail1 = 0.0, tail2 = 0.0;
      for (std::size_t m = M + 1; m < 400000; ++m) {
        const double w = sieve.divisor_count(m) / std::sqrt(static_cast<double>(m));
        tail1 += w * kernels::w1(suite, m / scale);
        tail2 += w * kernels::w2(suite, m / scale);
      }
      CHECK(tail1 <= kernels::tail_bound(suite, M, scale));
      CHECK(tail2 <= kernels::tail_bound(suite, M, scale));
    }
  }
}

TEST_CASE("gamma ratio and suite validation") {
  const kernels::KernelSuite suite(12);
  CHECK(std::abs(kernels::gamma_ratio(suite, 0.0) - 1.0) < 1e-14);
  CHECK(std::abs(kernels::gamma_ratio(suite, 1.0) - 6.0) < 1e-12);
  CHECK_THROWS_AS(kernels::gamma_ratio(suite, -6.0), DomainError);
  CHECK_THROWS_AS(kernels::KernelSuite(3), UsageError);
  CHECK_THROWS_AS(kernels::KernelSuite(0), UsageError);
}
