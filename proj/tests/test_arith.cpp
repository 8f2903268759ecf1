#include <doctest.h>

#include <cstdint>
#include <numeric>

#include "twmo/arith.hpp"
#include "twmo/error.hpp"

using namespace twmo;

namespace {

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1;
  b %= m;
  if (b < 0) b += m;
  for (; e > 0; e >>= 1) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
  }
  return r;
}

bool is_prime_trial(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

// (a/p) for an odd prime p by Euler's criterion
int legendre_euler(std::int64_t a, std::int64_t p) {
  const std::int64_t r = powmod(a, (p - 1) / 2, p);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

// Jacobi symbol as the product of Euler-criterion Legendre symbols over the factorization
int jacobi_by_factoring(std::int64_t a, std::int64_t n) {
  int result = 1;
  std::int64_t m = n;
  for (std::int64_t p = 3; m > 1; p += 2) {
    while (m % p == 0) {
      result *= legendre_euler(a, p);
      m /= p;
    }
  }
  return result;
}

int moebius_trial(std::int64_t n) {
  int mu = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

}  // namespace

TEST_CASE("kronecker against Euler's criterion on odd primes") {
  for (std::int64_t p = 3; p <= 500; p += 2) {
    if (!is_prime_trial(p)) continue;
    for (std::int64_t q = 3; q <= 500; q += 2) {
      if (!is_prime_trial(q)) continue;
      CHECK(arith::kronecker(p, q) == legendre_euler(p, q));
    }
  }
}

TEST_CASE("kronecker small values") {
  CHECK(arith::kronecker(8, 3) == -1);
  CHECK(arith::kronecker(8, 7) == 1);
  CHECK(arith::kronecker(5, 1) == 1);
  CHECK(arith::kronecker(4, 2) == 0);
  CHECK(arith::kronecker(-8, -1) == -1);
  CHECK(arith::kronecker(8, -1) == 1);
  CHECK(arith::kronecker(1, 0) == 1);
  CHECK(arith::kronecker(3, 0) == 0);
}

TEST_CASE("jacobi against factored Legendre symbols") {
  for (std::int64_t n = 1; n <= 401; n += 2) {
    for (std::int64_t a = -60; a <= 60; ++a) {
      CHECK(arith::jacobi(a, static_cast<std::uint64_t>(n)) == jacobi_by_factoring(a, n));
    }
  }
}

TEST_CASE("kronecker of 8d is periodic mod 8|d|") {
  for (std::int64_t d : {1, 3, -3, 5, 15, -7, 21}) {
    const std::int64_t D = 8 * d;
    const std::int64_t period = D < 0 ? -D : D;
    for (std::int64_t n = 0; n < 3 * period; ++n) {
      CHECK(arith::kronecker(D, n) == arith::kronecker(D, n % period));
    }
  }
}

TEST_CASE("sieve tables against trial division") {
  const auto s = arith::SieveTables::build(5000);
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    const auto nn = static_cast<std::int64_t>(n);
    CHECK(s.moebius(n) == moebius_trial(nn));
    CHECK(s.is_squarefree(n) == (moebius_trial(nn) != 0));
    CHECK(s.is_squarefree(n) == arith::is_squarefree_trial(n));
    CHECK(s.is_prime(n) == is_prime_trial(nn));
    if (n > 1) {
      std::uint64_t p = 2;
      while (n % p != 0) ++p;
      CHECK(s.smallest_prime_factor(n) == p);
    }
  }
}

TEST_CASE("euler_phi and divisor_count against brute counts") {
  const auto s = arith::SieveTables::build(2000);
  CHECK(s.euler_phi(1) == 1);
  CHECK(s.euler_phi(9) == 6);
  CHECK(s.euler_phi(407) == 360);
  for (std::uint64_t n = 1; n <= 600; ++n) {
    std::uint64_t coprime = 0, divisors = 0;
    for (std::uint64_t a = 1; a <= n; ++a) {
      if (std::gcd(a, n) == 1) ++coprime;
      if (n % a == 0) ++divisors;
    }
    CHECK(s.euler_phi(n) == coprime);
    CHECK(s.divisor_count(n) == divisors);
  }
}

TEST_CASE("factor reproduces n") {
  const auto s = arith::SieveTables::build(100000);
  for (std::uint64_t n = 1; n <= 100000; n += 97) {
    std::uint64_t prod = 1;
    for (const auto& [p, e] : s.factor(n)) {
      CHECK(s.is_prime(p));
      for (int i = 0; i < e; ++i) prod *= p;
    }
    CHECK(prod == n);
  }
}

TEST_CASE("sieve limits") {
  CHECK_THROWS_AS(arith::SieveTables::build(1u << 20, 1u << 10), ResourceError);
  const auto s = arith::SieveTables::build(100);
  CHECK_THROWS_AS(s.moebius(101), ResourceError);
  CHECK_THROWS_AS(s.moebius(0), ResourceError);
}

TEST_CASE("valuation") {
  CHECK(arith::valuation(0, 3) == -1);
  CHECK(arith::valuation(54, 3) == 3);
  CHECK(arith::valuation(-54, 3) == 3);
  CHECK(arith::valuation(7, 3) == 0);
}
