#include "twmo/euler.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "twmo/error.hpp"

namespace twmo::euler {

namespace {

double checked_inverse(double x, std::uint64_t p) {
  if (x == 0.0 || !std::isfinite(x)) {
    throw DomainError("degenerate Euler factor at p = " + std::to_string(p));
  }
  return 1.0 / x;
}

bool divides(std::uint64_t p, std::int64_t n) { return n % static_cast<std::int64_t>(p) == 0; }

int q_prime_sign(std::uint64_t p, std::int64_t q_prime) {
  return (arith::valuation(q_prime, p) % 2 == 0) ? 1 : -1;
}

// Only the odd part at a level prime with ν_p(Q') odd may be negative.
void check_factor(double value, std::uint64_t p, std::int64_t q_prime, bool level_prime) {
  const bool odd_part = level_prime && q_prime_sign(p, q_prime) == -1;
  if (!std::isfinite(value) || value == 0.0 || (value < 0.0 && !odd_part)) {
    throw DomainError("degenerate Euler factor " + std::to_string(value) + " at p = " +
                      std::to_string(p) + " for Q' = " + std::to_string(q_prime));
  }
}

void check_pair(const forms::Newform& f, const forms::Newform& g) {
  if (f.label == g.label && f.level == g.level && f.weight == g.weight) {
    throw DomainError("f = g (" + f.label +
                      "): L(1+u+w, f⊗f) has a pole at the origin, the constant is undefined");
  }
}

}  // namespace

double euler_local_factor(std::uint64_t p, const forms::Newform& f, double lambda_f,
                          const forms::Newform& g, double lambda_g, std::int64_t q_prime) {
  const double pd = static_cast<double>(p);
  const double rp = 1.0 / std::sqrt(pd);
  const double ip = 1.0 / pd;
  const bool bad_f = divides(p, f.level);
  const bool bad_g = divides(p, g.level);
  double value;
  if (!bad_f && !bad_g) {
    const double minus = checked_inverse(1.0 - lambda_f * rp + ip, p) *
                         checked_inverse(1.0 - lambda_g * rp + ip, p);
    const double plus = checked_inverse(1.0 + lambda_f * rp + ip, p) *
                        checked_inverse(1.0 + lambda_g * rp + ip, p);
    value = 1.0 + pd / (pd + 1.0) * (0.5 * minus + 0.5 * plus - 1.0);
  } else {
    const double cf = bad_f ? 0.0 : ip;
    const double cg = bad_g ? 0.0 : ip;
    const double minus = checked_inverse(1.0 - lambda_f * rp + cf, p) *
                         checked_inverse(1.0 - lambda_g * rp + cg, p);
    const double plus = checked_inverse(1.0 + lambda_f * rp + cf, p) *
                        checked_inverse(1.0 + lambda_g * rp + cg, p);
    value = pd / (pd + 1.0) * (0.5 * minus + q_prime_sign(p, q_prime) * 0.5 * plus);
  }
  check_factor(value, p, q_prime, bad_f || bad_g);
  return value;
}

double euler_local_factor_split(std::uint64_t p, const forms::Newform& f, double lambda_f,
                                const forms::Newform& g, double lambda_g, std::int64_t q_prime) {
  // h(ε) = (1 - ελ_f x + c_f)^{-1}(1 - ελ_g x + c_g)^{-1}; even part e = (h(+)+h(-))/2, odd part o = (h(+)-h(-))/2
  const double pd = static_cast<double>(p);
  const double x = std::pow(pd, -0.5);
  const bool bad = divides(p, f.level) || divides(p, g.level);
  const double cf = divides(p, f.level) ? 0.0 : x * x;
  const double cg = divides(p, g.level) ? 0.0 : x * x;
  auto h = [&](double eps) {
    return checked_inverse((1.0 + cf - eps * lambda_f * x) * (1.0 + cg - eps * lambda_g * x), p);
  };
  const double even = 0.5 * (h(1.0) + h(-1.0));
  const double odd = 0.5 * (h(1.0) - h(-1.0));
  const double w = pd / (pd + 1.0);
  double value;
  if (!bad) {
    value = (1.0 - w) + w * even;
  } else {
    value = q_prime_sign(p, q_prime) == 1 ? w * even : w * odd;
  }
  check_factor(value, p, q_prime, bad);
  return value;
}

Truncation E_at_origin(const forms::CoefficientTable& f, const forms::CoefficientTable& g,
                       std::int64_t q_prime, std::uint64_t P, const arith::SieveTables& sieve,
                       Exec exec) {
  check_pair(f.form(), g.form());
  if (P > f.length() || P > g.length()) {
    throw ResourceError("coefficient tables do not cover primes up to " + std::to_string(P));
  }
  if (P > sieve.limit()) throw ResourceError("sieve does not reach " + std::to_string(P));
  std::vector<std::uint32_t> primes;
  for (std::uint32_t p : sieve.primes()) {
    if (p > P) break;
    if (p != 2) primes.push_back(p);
  }
  std::vector<double> local(primes.size());
  const std::int64_t n = static_cast<std::int64_t>(primes.size());
  bool failed = false;
  std::string message;
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    const std::uint32_t p = primes[static_cast<std::size_t>(i)];
    try {
      local[static_cast<std::size_t>(i)] =
          euler_local_factor(p, f.form(), f[p], g.form(), g[p], q_prime);
    } catch (const Error& e) {
#pragma omp critical(twmo_euler_error)
      if (!failed) {
        failed = true;
        message = e.what();
      }
    }
  }
  if (failed) throw DomainError(message);
  Truncation out;
  double prod = 1.0;
  double half = 1.0;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    prod *= local[i];
    if (2 * static_cast<std::uint64_t>(primes[i]) <= P) half = prod;
  }
  out.value = prod;
  out.half_value = half;
  out.delta = std::abs(prod - half);
  out.primes = primes.size();
  return out;
}

double rankin_selberg_local(double a, bool a_bad, double b, bool b_bad, double X) {
  double denom;
  if (!a_bad && !b_bad) {
    denom = 1.0 - a * b * X + (a * a + b * b - 2.0) * X * X - a * b * X * X * X + X * X * X * X;
  } else if (a_bad && b_bad) {
    denom = 1.0 - a * b * X;
  } else {
    // the bad side contributes the single Satake parameter λ(p); the good side {β, β̄}
    const double bad = a_bad ? a : b;
    const double good = a_bad ? b : a;
    denom = 1.0 - bad * good * X + bad * bad * X * X;
  }
  return 1.0 / denom;
}

double sym2_local(double lambda, bool bad, double X) {
  if (bad) return 1.0 / (1.0 - lambda * lambda * X);
  return 1.0 / ((1.0 - X) * (1.0 - (lambda * lambda - 2.0) * X + X * X));
}

double sym2_local_series(double lambda, bool bad, double X) {
  // λ(p^{k+1}) = λ λ(p^k) - χ0(p) λ(p^{k-1})
  const double chi0 = bad ? 0.0 : 1.0;
  double prev = 1.0, cur = lambda;  // λ(p^0), λ(p^1)
  double sum = 1.0, xk = 1.0;
  for (int k = 1; k < 400; ++k) {
    const double next = lambda * cur - chi0 * prev;  // λ(p^{2k})
    prev = cur;
    cur = next;
    const double even = cur;
    const double after = lambda * cur - chi0 * prev;
    prev = cur;
    cur = after;
    xk *= X;
    const double term = even * xk;
    sum += term;
    if (std::abs(xk) * (2.0 * k + 3.0) < 1e-18 * std::abs(sum)) break;
  }
  if (bad) return sum;
  return sum / (1.0 - X * X);
}

EdgeLValues edge_L_values(const forms::CoefficientTable& f, const forms::CoefficientTable& g,
                          std::uint64_t P, const arith::SieveTables& sieve) {
  check_pair(f.form(), g.form());
  if (P > f.length() || P > g.length()) {
    throw ResourceError("coefficient tables do not cover primes up to " + std::to_string(P));
  }
  if (P > sieve.limit()) throw ResourceError("sieve does not reach " + std::to_string(P));
  EdgeLValues out;
  double rs = 1.0, sf = 1.0, sg = 1.0;
  std::size_t count = 0;
  for (std::uint32_t p : sieve.primes()) {
    if (p > P) break;
    const double X = 1.0 / static_cast<double>(p);
    const bool bf = divides(p, f.form().level);
    const bool bg = divides(p, g.form().level);
    rs *= rankin_selberg_local(f[p], bf, g[p], bg, X);
    sf *= sym2_local(f[p], bf, X);
    sg *= sym2_local(g[p], bg, X);
    ++count;
    if (2 * static_cast<std::uint64_t>(p) <= P) {
      out.rankin_selberg.half_value = rs;
      out.sym2_f.half_value = sf;
      out.sym2_g.half_value = sg;
    }
  }
  for (auto* t : {&out.rankin_selberg, &out.sym2_f, &out.sym2_g}) t->primes = count;
  out.rankin_selberg.value = rs;
  out.sym2_f.value = sf;
  out.sym2_g.value = sg;
  for (auto* t : {&out.rankin_selberg, &out.sym2_f, &out.sym2_g}) {
    t->delta = std::abs(t->value - t->half_value);
  }
  return out;
}

double bracket_factorized(double e1, double r1, double r2, int s1, int s2) {
  return e1 * (1.0 + s1 * r1) * (1.0 - s2 * r2);
}

EulerConstantReport constant_Cfg(const forms::CoefficientTable& f,
                                 const forms::CoefficientTable& g, std::uint64_t P,
                                 const arith::SieveTables& sieve, Exec exec) {
  check_pair(f.form(), g.form());
  EulerConstantReport r;
  r.prime_cutoff = P;
  const std::int64_t q1 = f.form().level;
  const std::int64_t q2 = g.form().level;
  r.q_primes = {1, q1, q2, q1 * q2};
  for (std::size_t i = 0; i < 4; ++i) r.E[i] = E_at_origin(f, g, r.q_primes[i], P, sieve, exec);
  r.s_f = f.form().i_power() * f.form().fricke;
  r.s_g = g.form().i_power() * g.form().fricke;
  const double norm = 1.0 / (2.0 * std::numbers::pi * std::numbers::pi);
  auto combine = [&](auto get) {
    return get(r.E[0]) + r.s_f * get(r.E[1]) - r.s_g * get(r.E[2]) -
           r.s_f * r.s_g * get(r.E[3]);
  };
  r.bracket = combine([](const Truncation& t) { return t.value; });
  const double bracket_half = combine([](const Truncation& t) { return t.half_value; });
  r.C_fg = norm * r.bracket;
  r.C_fg_half = norm * bracket_half;
  r.stabilization = std::abs(r.C_fg - r.C_fg_half);
  r.bracket_factorized = bracket_factorized(r.E[0].value, r.E[1].value / r.E[0].value,
                                            r.E[2].value / r.E[0].value, r.s_f, r.s_g);
  const double lhs = r.E[0].value * r.E[3].value;
  r.factorization_residual = std::abs(lhs - r.E[1].value * r.E[2].value) / std::abs(lhs);
  r.edge = edge_L_values(f, g, P, sieve);
  const double L3 = r.edge.rankin_selberg.value * r.edge.sym2_f.value * r.edge.sym2_g.value;
  for (std::size_t i = 0; i < 4; ++i) r.Z[i] = r.E[i].value / L3;
  return r;
}

}  // namespace twmo::euler
