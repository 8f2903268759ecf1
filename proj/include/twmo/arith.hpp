#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace twmo::arith {

/// Kronecker symbol (a/n) for all integers a, n (n = 0, negative and even n included).
int kronecker(std::int64_t a, std::int64_t n);

/// Jacobi symbol (a/n) for odd n > 0.
int jacobi(std::int64_t a, std::uint64_t n);

/// Squarefree test by trial division, for callers without a sieve.
bool is_squarefree_trial(std::uint64_t n);

struct PrimePower {
  std::uint64_t prime;
  int exponent;
};

/// Smallest-prime-factor and Möbius tables up to `limit`. Immutable after build.
class SieveTables {
 public:
  static constexpr std::uint32_t kDefaultLimit = 1u << 24;
  static constexpr std::uint32_t kDefaultMaxLimit = 1u << 27;

  /// Throws ResourceError when limit > max_limit.
  static SieveTables build(std::uint32_t limit, std::uint32_t max_limit = kDefaultMaxLimit);

  std::uint32_t limit() const noexcept { return limit_; }

  // The accessors below throw ResourceError for n outside [1, limit].
  std::uint32_t smallest_prime_factor(std::uint64_t n) const;
  int moebius(std::uint64_t n) const;
  bool is_squarefree(std::uint64_t n) const;
  bool is_prime(std::uint64_t n) const;

  std::vector<PrimePower> factor(std::uint64_t n) const;
  std::uint64_t euler_phi(std::uint64_t n) const;
  std::uint32_t divisor_count(std::uint64_t n) const;

  const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

 private:
  void check(std::uint64_t n) const;

  std::uint32_t limit_ = 0;
  std::vector<std::uint32_t> spf_;
  std::vector<std::int8_t> moebius_;
  std::vector<bool> squarefree_;
  std::vector<std::uint32_t> primes_;
};

/// Multiplicative p-adic valuation; v(0) is reported as -1 by convention (caller decides).
int valuation(std::int64_t n, std::uint64_t p);

}  // namespace twmo::arith
