#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "twmo/arith.hpp"
#include "twmo/smooth.hpp"

namespace twmo::gauss {

struct GaussValue {
  enum class Exactness { ExactRational, InvolvesSqrt };
  std::complex<double> value;
  Exactness exactness;
};

/// G_k(n) = ((1-i)/2 + (-1/n)(1+i)/2) Σ_{a mod n} (a/n) e(ak/n) by direct summation (n odd).
GaussValue gauss_brute(std::int64_t k, std::int64_t n);

/// gauss_brute(k, n) for every k in [-k_max, k_max], element k_max + k; shares the character table.
std::vector<std::complex<double>> gauss_brute_range(std::int64_t k_max, std::int64_t n);

/// G_k(n) for one prime power p^β from the closed-form case table (α = v_p(k), ∞ for k = 0).
double gauss_prime_power(std::int64_t k, std::uint64_t p, int beta);

/// G_k(n) by multiplicativity over the factorization of n.
GaussValue gauss_fast(std::int64_t k, std::int64_t n, const arith::SieveTables& sieve);

struct PoissonReport {
  std::int64_t n;
  double Z;
  std::string weight;
  double lhs;
  double rhs;
  double abs_err;
  long k_used;
  double tail_estimate;
};

/// Both sides of Σ_{(d,2)=1} (d/n) F(d/Z) = (Z/2n)(2/n) Σ_k (-1)^k G_k(n) F̌(kZ/2n).
/// The k-sum starts at max(32, ceil(8n/Z)·8) and extends until the last block of terms is
/// below cfg.tolerance/10; throws NumericalError when cfg.k_truncation is reached first.
PoissonReport poisson_verify(std::int64_t n, double Z, const smooth::SmoothWeight& F,
                             const smooth::TransformConfig& cfg,
                             const arith::SieveTables& sieve);

}  // namespace twmo::gauss
