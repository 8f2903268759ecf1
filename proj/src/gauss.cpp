#include "twmo/gauss.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "twmo/error.hpp"

namespace twmo::gauss {

namespace {

using cplx = std::complex<double>;

void check_odd(std::int64_t n) {
  if (n <= 0 || n % 2 == 0) throw UsageError("Gauss sums need odd n > 0");
}

GaussValue::Exactness classify(std::int64_t k, std::int64_t n) {
  // a √p factor appears exactly when some p^β || n has β = v_p(k) + 1 odd
  if (k == 0) return GaussValue::Exactness::ExactRational;
  std::int64_t m = n;
  for (std::int64_t p = 3; m > 1; p += 2) {
    if (p * p > m) p = m;
    if (m % p != 0) continue;
    int beta = 0;
    while (m % p == 0) {
      m /= p;
      ++beta;
    }
    const int alpha = arith::valuation(k, static_cast<std::uint64_t>(p));
    if (beta == alpha + 1 && beta % 2 == 1) return GaussValue::Exactness::InvolvesSqrt;
  }
  return GaussValue::Exactness::ExactRational;
}

}  // namespace

GaussValue gauss_brute(std::int64_t k, std::int64_t n) {
  check_odd(n);
  const double two_pi_over_n = 2.0 * std::numbers::pi / static_cast<double>(n);
  std::int64_t kr = k % n;
  if (kr < 0) kr += n;
  cplx sum = 0.0;
  for (std::int64_t a = 0; a < n; ++a) {
    const int chi = arith::jacobi(a, static_cast<std::uint64_t>(n));
    if (chi == 0) continue;
    const std::int64_t idx = (a * kr) % n;
    sum += static_cast<double>(chi) * std::polar(1.0, two_pi_over_n * static_cast<double>(idx));
  }
  const int minus_one = arith::jacobi(-1, static_cast<std::uint64_t>(n));
  const cplx prefactor = cplx(0.5, -0.5) + static_cast<double>(minus_one) * cplx(0.5, 0.5);
  return {prefactor * sum, classify(k, n)};
}

std::vector<cplx> gauss_brute_range(std::int64_t k_max, std::int64_t n) {
  check_odd(n);
  if (k_max < 0) throw UsageError("k_max must be non-negative");
  const auto un = static_cast<std::uint64_t>(n);
  std::vector<int> chi(static_cast<std::size_t>(n));
  std::vector<cplx> roots(static_cast<std::size_t>(n));
  const double two_pi_over_n = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::int64_t a = 0; a < n; ++a) {
    chi[static_cast<std::size_t>(a)] = arith::jacobi(a, un);
    roots[static_cast<std::size_t>(a)] = std::polar(1.0, two_pi_over_n * static_cast<double>(a));
  }
  const int minus_one = arith::jacobi(-1, un);
  const cplx prefactor = cplx(0.5, -0.5) + static_cast<double>(minus_one) * cplx(0.5, 0.5);
  std::vector<cplx> out(static_cast<std::size_t>(2 * k_max + 1));
  for (std::int64_t k = -k_max; k <= k_max; ++k) {
    std::int64_t kr = k % n;
    if (kr < 0) kr += n;
    cplx sum = 0.0;
    std::int64_t idx = 0;
    for (std::int64_t a = 0; a < n; ++a, idx += kr) {
      if (idx >= n) idx %= n;
      const int c = chi[static_cast<std::size_t>(a)];
      if (c != 0) sum += static_cast<double>(c) * roots[static_cast<std::size_t>(idx)];
    }
    out[static_cast<std::size_t>(k + k_max)] = prefactor * sum;
  }
  return out;
}

double gauss_prime_power(std::int64_t k, std::uint64_t p, int beta) {
  if (beta == 0) return 1.0;
  const int alpha = (k == 0) ? beta + 2 : arith::valuation(k, p);  // α = ∞ behaves like α ≥ β
  const double pd = static_cast<double>(p);
  if (k == 0 || beta <= alpha) {
    if (beta % 2 == 1) return 0.0;
    return std::pow(pd, beta) - std::pow(pd, beta - 1);  // φ(p^β)
  }
  if (beta == alpha + 1) {
    if (beta % 2 == 0) return -std::pow(pd, alpha);
    std::int64_t unit = k;
    for (int i = 0; i < alpha; ++i) unit /= static_cast<std::int64_t>(p);
    return arith::jacobi(unit, p) * std::pow(pd, alpha + 0.5);
  }
  return 0.0;
}

GaussValue gauss_fast(std::int64_t k, std::int64_t n, const arith::SieveTables& sieve) {
  check_odd(n);
  double value = 1.0;
  bool sqrt_factor = false;
  for (const auto& [p, beta] : sieve.factor(static_cast<std::uint64_t>(n))) {
    value *= gauss_prime_power(k, p, beta);
    if (k != 0 && beta == arith::valuation(k, p) + 1 && beta % 2 == 1) sqrt_factor = true;
    if (value == 0.0) break;
  }
  return {cplx(value, 0.0), sqrt_factor ? GaussValue::Exactness::InvolvesSqrt
                                        : GaussValue::Exactness::ExactRational};
}

PoissonReport poisson_verify(std::int64_t n, double Z, const smooth::SmoothWeight& F,
                             const smooth::TransformConfig& cfg,
                             const arith::SieveTables& sieve) {
  check_odd(n);
  smooth::validate(cfg);
  if (!(Z > 0.0)) throw UsageError("Poisson check needs Z > 0");
  if (F.kind() == smooth::WeightKind::StepPsi) throw UsageError("ψ is not compactly supported");

  const auto& sup = F.support();
  const auto un = static_cast<std::uint64_t>(n);

  double lhs = 0.0;
  std::int64_t d = static_cast<std::int64_t>(std::floor(sup.lo * Z));
  if (d % 2 == 0) ++d;
  if (d < 1) d = 1;
  for (; static_cast<double>(d) <= sup.hi * Z; d += 2) {
    const int chi = arith::jacobi(d, un);
    if (chi != 0) lhs += chi * F(static_cast<double>(d) / Z);
  }

  // G_k(n) depends on k mod n only
  std::vector<double> gk(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) gk[static_cast<std::size_t>(k)] = gauss_fast(k, n, sieve).value.real();
  auto g_of = [&](long k) {
    long r = k % n;
    if (r < 0) r += n;
    return gk[static_cast<std::size_t>(r)];
  };

  const double step = Z / (2.0 * static_cast<double>(n));
  const long k0 = std::max<long>(32, static_cast<long>(std::ceil(8.0 * n / Z)) * 8);
  const long block = std::max<long>(32, static_cast<long>(std::ceil(8.0 / step)));
  const long k_cap = cfg.k_truncation;
  const double target = 0.1 * cfg.tolerance * (1.0 + std::abs(lhs));
  const double prefactor = step * arith::jacobi(2, un);

  // the node set resolves frequencies up to k_plan·step; past that, restart with twice the range
  long k_plan = std::max(k0, static_cast<long>(std::ceil(64.0 / step)));
  double sum = 0.0, block_mass = 0.0;
  long k = 0;
  for (bool done = false; !done;) {
    smooth::ProgressionTransform transform(
        F, step, smooth::ProgressionTransform::nodes_for(F, static_cast<double>(k_plan) * step, cfg.nodes));
    sum = 0.0;
    block_mass = 0.0;
    for (k = 0; k <= k_plan; ++k) {
      const auto [c, s] = transform.next();
      double term;
      if (k == 0) {
        term = g_of(0) * (c + s);
      } else {
        // F̌(ξ) = C + S, F̌(-ξ) = C - S
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        term = sign * (g_of(k) * (c + s) + g_of(-k) * (c - s));
      }
      sum += term;
      block_mass += std::abs(prefactor * term);
      if (k >= k0 && k % block == 0) {
        if (block_mass < target) {
          done = true;
          break;
        }
        block_mass = 0.0;
      }
      if (k >= k_cap) {
        throw NumericalError("Poisson k-sum tail above tolerance at the truncation cap (n = " +
                             std::to_string(n) + ", Z = " + std::to_string(Z) + ")");
      }
    }
    if (!done) k_plan *= 2;
  }
  const double rhs = prefactor * sum;
  return {n, Z, F.name(), lhs, rhs, std::abs(lhs - rhs), k, block_mass};
}

}  // namespace twmo::gauss
