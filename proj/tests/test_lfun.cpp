#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "twmo/arith.hpp"
#include "twmo/error.hpp"
#include "twmo/forms.hpp"
#include "twmo/lfun.hpp"
#include "twmo/verify.hpp"

using namespace twmo;

namespace {

struct Fixture {
  arith::SieveTables sieve = arith::SieveTables::build(60001);
  forms::CoefficientTable delta = forms::delta_coefficients(60000);
  forms::CoefficientTable e11 = forms::elliptic_coefficients(forms::curve_11a(), 60000, sieve);
  forms::CoefficientTable e37 = forms::elliptic_coefficients(forms::curve_37a(), 60000, sieve);
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

// (1 + ω) Σ λχ m^{-1/2} Q(κ/2, 2πm/scale) with Boost's incomplete gamma
double central_value_boost(const forms::CoefficientTable& t, std::int64_t d, int omega) {
  if (omega == -1) return 0.0;
  const double scale = 8.0 * std::abs(static_cast<double>(d)) * std::sqrt(static_cast<double>(t.form().level));
  double sum = 0.0;
  for (std::size_t m = 1; m <= t.length(); ++m) {
    const double x = 2.0 * std::numbers::pi * m / scale;
    if (x > 200.0) break;
    sum += t[m] * arith::kronecker(8 * d, static_cast<std::int64_t>(m)) *
           boost::math::gamma_q(0.5 * t.form().weight, x) / std::sqrt(static_cast<double>(m));
  }
  return 2.0 * sum;
}

}  // namespace

TEST_CASE("twist character") {
  CHECK_THROWS_AS(lfun::TwistCharacter(0), UsageError);
  CHECK_THROWS_AS(lfun::TwistCharacter(4), UsageError);
  CHECK_THROWS_AS(lfun::TwistCharacter(9), UsageError);
  for (std::int64_t d : {1, -1, 3, -15, 21}) {
    const lfun::TwistCharacter chi(d);
    CHECK(chi.D() == 8 * d);
    CHECK(chi.chi_minus_one() == arith::kronecker(8 * d, -1));
    for (std::int64_t n = 0; n < 400; ++n) CHECK(chi.at(static_cast<std::size_t>(n)) == arith::kronecker(8 * d, n));
  }
}

TEST_CASE("central values against a Boost-gamma evaluation") {
  const auto& fx = fixture();
  for (const auto* t : {&fx.delta, &fx.e11, &fx.e37}) {
    for (std::int64_t d : verify::twist_parameters(t->form(), 8)) {
      const lfun::TwistCharacter chi(d);
      const auto v = lfun::central_value(*t, chi, 1e-11);
      CHECK(std::abs(v.value - central_value_boost(*t, d, v.omega)) < 1e-9);
      CHECK(v.value >= -1e-8);  // central values of self-dual twists are non-negative
    }
  }
}

TEST_CASE("balanced AFE is independent of A and vanishes for root number -1") {
  const auto& fx = fixture();
  for (const auto* t : {&fx.delta, &fx.e11, &fx.e37}) {
    for (std::int64_t d : verify::twist_parameters(t->form(), 12)) {
      const lfun::TwistCharacter chi(d);
      const auto base = lfun::central_value(*t, chi, 1e-11);
      for (double A : {0.5, 1.0, 2.0, 3.0}) {
        const auto bal = lfun::central_value_balanced(*t, chi, A, 1e-11);
        CHECK(bal.omega == base.omega);
        if (bal.omega == 1) {
          CHECK(std::abs(bal.value - base.value) < 1e-8);
        } else {
          CHECK(base.value == 0.0);
          CHECK(std::abs(bal.value) <= 1e-7 * bal.gross_mass);
        }
      }
    }
  }
}

TEST_CASE("general-s AFE matches at the centre") {
  const auto& fx = fixture();
  for (std::int64_t d : verify::twist_parameters(fx.e11.form(), 6, 1)) {
    const lfun::TwistCharacter chi(d);
    const double v = lfun::central_value(fx.e11, chi, 1e-11).value;
    const auto g = lfun::afe_general_s(fx.e11, chi, 0.5, 1e-12);
    CHECK(std::abs(g.real() - v) < 1e-9);
    CHECK(std::abs(g.imag()) < 1e-12);
  }
  CHECK_THROWS_AS(lfun::afe_general_s(fx.e11, lfun::TwistCharacter(1), 0.8, 1e-10), UsageError);
}

TEST_CASE("central derivative against a difference quotient") {
  const auto& fx = fixture();
  for (std::int64_t d : verify::twist_parameters(fx.e37.form(), 10, -1)) {
    const lfun::TwistCharacter chi(d);
    const double v = lfun::central_derivative(fx.e37, chi, 1e-11).value;
    const double oracle = lfun::derivative_oracle(fx.e37, chi);
    CHECK(std::abs(v - oracle) <= 1e-5 * std::abs(oracle));
  }
}

TEST_CASE("domain and resource errors") {
  const auto& fx = fixture();
  CHECK_THROWS_AS(lfun::central_value(fx.e11, lfun::TwistCharacter(11), 1e-8), DomainError);
  CHECK_THROWS_AS(lfun::central_value(fx.e37, lfun::TwistCharacter(-37), 1e-8), DomainError);
  const auto plus = verify::twist_parameters(fx.e37.form(), 1, 1).front();
  CHECK_THROWS_AS(lfun::central_derivative(fx.e37, lfun::TwistCharacter(plus), 1e-8), DomainError);
  CHECK_THROWS_AS(lfun::central_value(fx.delta.prefix(20), lfun::TwistCharacter(1), 1e-8), ResourceError);
  CHECK_THROWS_AS(lfun::central_value_balanced(fx.delta, lfun::TwistCharacter(1), -1.0, 1e-8), UsageError);
}

TEST_CASE("root numbers") {
  // ω = i^κ η χ_{8d}(-q)
  CHECK(lfun::omega(forms::delta_form(), lfun::TwistCharacter(1)) == 1);
  CHECK(lfun::omega(forms::delta_form(), lfun::TwistCharacter(-1)) == -1);
  for (std::int64_t d : {1, 3, 5, 7, -3, 13}) {
    const lfun::TwistCharacter chi(d);
    CHECK(lfun::omega(forms::curve_37a(), chi) == -arith::kronecker(8 * d, -37));
    CHECK(lfun::omega(forms::curve_11a(), chi) == arith::kronecker(8 * d, -11));
  }
}
