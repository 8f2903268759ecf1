#include "twmo/arith.hpp"

#include <bit>
#include <cstdlib>
#include <string>

#include "twmo/error.hpp"

namespace twmo::arith {

int jacobi(std::int64_t a, std::uint64_t n) {
  // binary algorithm: strip twos with the (2/n) rule, flip by reciprocity
  std::int64_t r = a % static_cast<std::int64_t>(n);
  if (r < 0) r += static_cast<std::int64_t>(n);
  std::uint64_t x = static_cast<std::uint64_t>(r);
  std::uint64_t y = n;
  int t = 1;
  while (x != 0) {
    const int v = std::countr_zero(x);
    x >>= v;
    if ((v & 1) && ((y & 7) == 3 || (y & 7) == 5)) t = -t;
    if ((x & 3) == 3 && (y & 3) == 3) t = -t;
    const std::uint64_t rem = y % x;
    y = x;
    x = rem;
  }
  return y == 1 ? t : 0;
}

int kronecker(std::int64_t a, std::int64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if ((a & 1) == 0 && (n & 1) == 0) return 0;

  int t = 1;
  std::uint64_t m;
  if (n < 0) {
    m = static_cast<std::uint64_t>(-(n + 1)) + 1;
    if (a < 0) t = -t;
  } else {
    m = static_cast<std::uint64_t>(n);
  }

  const int v = std::countr_zero(m);
  m >>= v;
  if (v & 1) {
    // a is odd here; (a/2) = +1 iff a = ±1 mod 8
    const std::int64_t a8 = ((a % 8) + 8) % 8;
    if (a8 == 3 || a8 == 5) t = -t;
  }
  return t * jacobi(a, m);
}

bool is_squarefree_trial(std::uint64_t n) {
  if (n == 0) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return false;
    }
  }
  return true;
}

int valuation(std::int64_t n, std::uint64_t p) {
  if (n == 0) return -1;
  std::uint64_t m = static_cast<std::uint64_t>(n < 0 ? -n : n);
  int v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

SieveTables SieveTables::build(std::uint32_t limit, std::uint32_t max_limit) {
  if (limit < 2) throw UsageError("sieve limit must be at least 2");
  if (limit > max_limit) {
    throw ResourceError("sieve limit " + std::to_string(limit) + " exceeds the configured bound " +
                        std::to_string(max_limit));
  }
  SieveTables s;
  s.limit_ = limit;
  s.spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
  s.moebius_.assign(static_cast<std::size_t>(limit) + 1, 0);
  s.squarefree_.assign(static_cast<std::size_t>(limit) + 1, false);
  s.moebius_[1] = 1;
  s.squarefree_[1] = true;
  s.spf_[1] = 1;

  // linear sieve
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (s.spf_[i] == 0) {
      s.spf_[i] = static_cast<std::uint32_t>(i);
      s.primes_.push_back(static_cast<std::uint32_t>(i));
      s.moebius_[i] = -1;
    }
    for (const std::uint32_t p : s.primes_) {
      const std::uint64_t ip = i * p;
      if (p > s.spf_[i] || ip > limit) break;
      s.spf_[ip] = p;
      s.moebius_[ip] = (p == s.spf_[i]) ? 0 : static_cast<std::int8_t>(-s.moebius_[i]);
    }
  }
  for (std::uint64_t i = 2; i <= limit; ++i) s.squarefree_[i] = s.moebius_[i] != 0;
  return s;
}

void SieveTables::check(std::uint64_t n) const {
  if (n == 0 || n > limit_) {
    throw ResourceError("argument " + std::to_string(n) + " outside sieve range [1, " +
                        std::to_string(limit_) + "]");
  }
}

std::uint32_t SieveTables::smallest_prime_factor(std::uint64_t n) const {
  check(n);
  return spf_[n];
}

int SieveTables::moebius(std::uint64_t n) const {
  check(n);
  return moebius_[n];
}

bool SieveTables::is_squarefree(std::uint64_t n) const {
  check(n);
  return squarefree_[n];
}

bool SieveTables::is_prime(std::uint64_t n) const {
  check(n);
  return n >= 2 && spf_[n] == n;
}

std::vector<PrimePower> SieveTables::factor(std::uint64_t n) const {
  check(n);
  std::vector<PrimePower> out;
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  return out;
}

std::uint64_t SieveTables::euler_phi(std::uint64_t n) const {
  std::uint64_t phi = 1;
  for (const auto& [p, e] : factor(n)) {
    phi *= p - 1;
    for (int i = 1; i < e; ++i) phi *= p;
  }
  return phi;
}

std::uint32_t SieveTables::divisor_count(std::uint64_t n) const {
  std::uint32_t d = 1;
  for (const auto& pe : factor(n)) d *= static_cast<std::uint32_t>(pe.exponent + 1);
  return d;
}

}  // namespace twmo::arith
