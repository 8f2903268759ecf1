#include <doctest.h>

#include <cmath>
#include <numeric>
#include <cstdint>
#include <vector>

#include "twmo/arith.hpp"
#include "twmo/error.hpp"
#include "twmo/forms.hpp"

using namespace twmo;

namespace {

// coefficients of q·∏_{k<=M} (1 - q^k)^24, one factor (1 - q^k) at a time
std::vector<__int128> tau_by_product(std::size_t M) {
  std::vector<__int128> poly(M, 0);  // coefficient of q^j in ∏(1-q^k)^24, j < M
  poly[0] = 1;
  for (std::size_t k = 1; k < M; ++k) {
    for (int rep = 0; rep < 24; ++rep) {
      for (std::size_t j = M - 1; j >= k; --j) {
        poly[j] -= poly[j - k];
        if (j == k) break;
      }
    }
  }
  std::vector<__int128> tau(M + 1, 0);
  for (std::size_t n = 1; n <= M; ++n) tau[n] = poly[n - 1];
  return tau;
}

std::int64_t naive_ap(const forms::CurveCoefficients& c, std::int64_t p) {
  auto mod = [p](std::int64_t v) { return ((v % p) + p) % p; };
  std::int64_t count = 1;  // point at infinity
  for (std::int64_t x = 0; x < p; ++x) {
    for (std::int64_t y = 0; y < p; ++y) {
      const std::int64_t lhs = mod(y * y + c.a1 * x * y + c.a3 * y);
      const std::int64_t rhs = mod(x * x % p * x + c.a2 * x % p * x + c.a4 * x + c.a6);
      if (lhs == rhs) ++count;
    }
  }
  return p + 1 - count;
}

}  // namespace

TEST_CASE("tau against the direct product expansion") {
  const std::size_t M = 400;
  const auto expected = tau_by_product(M);
  const auto tau = forms::ramanujan_tau(M, Exec::Serial);
  for (std::size_t n = 1; n <= M; ++n) CHECK((tau[n] == expected[n]));
}

TEST_CASE("tau small values") {
  const auto tau = forms::ramanujan_tau(10);
  CHECK(static_cast<long long>(tau[1]) == 1);
  CHECK(static_cast<long long>(tau[2]) == -24);
  CHECK(static_cast<long long>(tau[3]) == 252);
  CHECK(static_cast<long long>(tau[5]) == 4830);
  CHECK(static_cast<long long>(tau[7]) == -16744);
}

TEST_CASE("tau serial and parallel agree") {
  const auto a = forms::ramanujan_tau(20000, Exec::Serial);
  const auto b = forms::ramanujan_tau(20000, Exec::Parallel);
  CHECK((a == b));
}

TEST_CASE("elliptic a_p against naive point counts") {
  const auto sieve = arith::SieveTables::build(300);
  for (const auto& curve : {forms::curve_11a(), forms::curve_37a()}) {
    for (std::uint32_t p : sieve.primes()) {
      if (p > 250) break;
      const std::int64_t expected = naive_ap(*curve.curve, p);
      CHECK(forms::curve_trace(*curve.curve, p) == expected);
      if (curve.level % p != 0) CHECK(forms::elliptic_ap(curve, p) == expected);
    }
  }
}

TEST_CASE("elliptic a_p known values") {
  const auto e11 = forms::curve_11a();
  const auto e37 = forms::curve_37a();
  CHECK(forms::elliptic_ap(e11, 2) == -2);
  CHECK(forms::elliptic_ap(e11, 3) == -1);
  CHECK(forms::elliptic_ap(e11, 5) == 1);
  CHECK(forms::elliptic_ap(e11, 7) == -2);
  CHECK(forms::elliptic_ap(e37, 2) == -2);
  CHECK(forms::elliptic_ap(e37, 3) == -3);
  CHECK(forms::elliptic_ap(e37, 5) == -2);
  CHECK(forms::elliptic_ap(e37, 7) == -1);
  CHECK_THROWS_AS(forms::elliptic_ap(e11, 11), DomainError);
  CHECK(forms::curve_trace(*e11.curve, 11) == 1);
  CHECK(forms::curve_trace(*e37.curve, 37) == -1);
}

TEST_CASE("Hecke relations and Deligne bound") {
  const std::size_t M = 20000;
  const auto sieve = arith::SieveTables::build(M + 1);
  const std::vector<forms::CoefficientTable> tables{
      forms::delta_coefficients(M), forms::elliptic_coefficients(forms::curve_11a(), M, sieve),
      forms::elliptic_coefficients(forms::curve_37a(), M, sieve)};
  for (const auto& t : tables) {
    CHECK(t[1] == 1.0);
    CHECK_NOTHROW(forms::check_deligne(t, sieve));
    for (std::size_t m = 2; m * m <= M; ++m) {
      for (std::size_t n = m + 1; m * n <= M; ++n) {
        if (std::gcd(m, n) != 1) continue;
        CHECK(std::abs(t[m] * t[n] - t[m * n]) <= 1e-10 * sieve.divisor_count(m * n));
      }
    }
    for (std::uint32_t p : sieve.primes()) {
      if (static_cast<std::size_t>(p) * p > M) break;
      const double chi0 = (t.form().level % p == 0) ? 0.0 : 1.0;
      std::size_t pk = p;
      while (pk * p <= M) {
        CHECK(std::abs(t[p] * t[pk] - t[pk * p] - chi0 * t[pk / p]) <= 1e-10 * 64);
        pk *= p;
      }
    }
  }
}

TEST_CASE("Deligne violation is reported") {
  const auto sieve = arith::SieveTables::build(100);
  std::vector<double> values(11, 0.0);
  values[1] = 1.0;
  values[7] = 2.5;
  const forms::CoefficientTable bad(forms::curve_11a(), values);
  CHECK_THROWS_AS(forms::check_deligne(bad, sieve), DomainError);
}

TEST_CASE("Fricke signs of the built-in forms") {
  const std::size_t M = 3000;
  const auto sieve = arith::SieveTables::build(M + 1);
  const auto delta = forms::delta_coefficients(M);
  const auto e11 = forms::elliptic_coefficients(forms::curve_11a(), M, sieve);
  const auto e37 = forms::elliptic_coefficients(forms::curve_37a(), M, sieve);
  for (double t : {1.1, 1.2, 1.5, 2.0}) {
    CHECK(forms::determine_fricke_sign(delta, t) == 1);
    CHECK(forms::determine_fricke_sign(e11, t) == -1);
    CHECK(forms::determine_fricke_sign(e37, t) == 1);
    const auto probe = forms::fricke_probe(e37, t);
    CHECK(probe.determinate);
    CHECK(std::abs(probe.ratio - 1.0) < 1e-9);
  }
  CHECK_THROWS_AS(forms::theta_series(e37.prefix(10), 1.1), ResourceError);
}

TEST_CASE("form validation and labels") {
  CHECK_THROWS_AS(forms::builtin_form("nope"), UsageError);
  CHECK(forms::builtin_form("11a1").level == 11);
  forms::Newform odd = forms::curve_11a();
  odd.weight = 3;
  CHECK_THROWS_AS(forms::validate(odd), UsageError);
  forms::Newform even_level = forms::curve_11a();
  even_level.level = 22;
  CHECK_THROWS_AS(forms::validate(even_level), UsageError);
  CHECK(forms::delta_form().i_power() == 1);
  CHECK(forms::curve_37a().i_power() == -1);
}
