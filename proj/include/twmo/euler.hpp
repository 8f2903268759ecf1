#pragma once

#include <array>
#include <cstdint>

#include "twmo/arith.hpp"
#include "twmo/exec.hpp"
#include "twmo/forms.hpp"

namespace twmo::euler {

/// Local factor of 𝓔(0,0;Q') at an odd prime p, Q = q_f q_g.
/// Throws DomainError when an inverted quantity vanishes or the factor is zero. The factor is
/// positive except at p | Q with ν_p(Q') odd, where it is the odd part and may be negative.
double euler_local_factor(std::uint64_t p, const forms::Newform& f, double lambda_f,
                          const forms::Newform& g, double lambda_g, std::int64_t q_prime);

/// Same factor coded as even part ± odd part of the two inverted products.
double euler_local_factor_split(std::uint64_t p, const forms::Newform& f, double lambda_f,
                                const forms::Newform& g, double lambda_g, std::int64_t q_prime);

struct Truncation {
  double value = 0.0;       // product over primes <= P
  double half_value = 0.0;  // product over primes <= P/2
  double delta = 0.0;       // |value - half_value|
  std::size_t primes = 0;
};

/// ∏_{2 < p <= P} euler_local_factor. Needs λ_f(p), λ_g(p) for p <= P.
/// Throws DomainError for f = g (pole at the origin).
Truncation E_at_origin(const forms::CoefficientTable& f, const forms::CoefficientTable& g,
                       std::int64_t q_prime, std::uint64_t P, const arith::SieveTables& sieve,
                       Exec exec = Exec::Parallel);

/// Local factor of L(s, f⊗g) at X = p^{-s}; a level prime uses the Satake set {λ(p), 0}.
double rankin_selberg_local(double a, bool a_bad, double b, bool b_bad, double X);
/// Local factor of L(s, Sym² f) from the Satake parameters.
double sym2_local(double lambda, bool bad, double X);
/// Same factor from (1 - X²)^{-1} Σ_k λ(p^{2k}) X^k with the Hecke recursion.
double sym2_local_series(double lambda, bool bad, double X);

struct EdgeLValues {
  Truncation rankin_selberg;
  Truncation sym2_f;
  Truncation sym2_g;
};

/// Truncated Euler products at s = 1 over all primes p <= P (p = 2 included).
EdgeLValues edge_L_values(const forms::CoefficientTable& f, const forms::CoefficientTable& g,
                          std::uint64_t P, const arith::SieveTables& sieve);

/// E(1)(1 + s1 r1)(1 - s2 r2) with r_i = E(q_i)/E(1).
double bracket_factorized(double e1, double r1, double r2, int s1, int s2);

struct EulerConstantReport {
  std::uint64_t prime_cutoff = 0;
  std::array<std::int64_t, 4> q_primes{};  // 1, q_f, q_g, q_f q_g
  std::array<Truncation, 4> E{};
  int s_f = 1;  // i^κ_f η_f
  int s_g = 1;  // i^κ_g η_g
  double bracket = 0.0;
  double bracket_factorized = 0.0;
  double C_fg = 0.0;
  double C_fg_half = 0.0;
  double stabilization = 0.0;            // |C_fg(P) - C_fg(P/2)|
  double factorization_residual = 0.0;   // |E(1)E(q_f q_g) - E(q_f)E(q_g)| / |E(1)E(q_f q_g)|
  EdgeLValues edge;
  std::array<double, 4> Z{};  // E(Q') / (L(1,f⊗g) L(1,Sym²f) L(1,Sym²g))
};

/// C_{f,g} = (1/2π²){E(1) + s_f E(q_f) - s_g E(q_g) - s_f s_g E(q_f q_g)} with diagnostics.
EulerConstantReport constant_Cfg(const forms::CoefficientTable& f,
                                 const forms::CoefficientTable& g, std::uint64_t P,
                                 const arith::SieveTables& sieve, Exec exec = Exec::Parallel);

}  // namespace twmo::euler
