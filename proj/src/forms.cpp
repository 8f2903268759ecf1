#include "twmo/forms.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "twmo/error.hpp"

namespace twmo::forms {

void validate(const Newform& form) {
  if (form.weight <= 0 || form.weight % 2 != 0) {
    throw UsageError("form " + form.label + ": weight must be even and positive");
  }
  if (form.level <= 0 || form.level % 2 == 0) {
    throw UsageError("form " + form.label + ": level must be odd and positive");
  }
  if (form.fricke != 1 && form.fricke != -1) {
    throw UsageError("form " + form.label + ": Fricke eigenvalue must be +1 or -1");
  }
}

Newform delta_form() {
  return Newform{12, 1, 1, FormKind::Eta24Delta, std::nullopt, "delta"};
}

Newform curve_11a() {
  // y^2 + y = x^3 - x^2 - 10x - 20
  return Newform{2, 11, -1, FormKind::EllipticCurve, CurveCoefficients{0, -1, 1, -10, -20}, "11a"};
}

Newform curve_37a() {
  // y^2 + y = x^3 - x
  return Newform{2, 37, 1, FormKind::EllipticCurve, CurveCoefficients{0, 0, 1, -1, 0}, "37a"};
}

Newform builtin_form(const std::string& label) {
  if (label == "delta" || label == "Delta") return delta_form();
  if (label == "11a" || label == "11a1") return curve_11a();
  if (label == "37a" || label == "37a1") return curve_37a();
  throw UsageError("unknown form label '" + label + "' (built-ins: delta, 11a, 37a)");
}

CoefficientTable::CoefficientTable(Newform form, std::vector<double> values)
    : form_(std::move(form)), values_(std::move(values)) {
  if (!values_.empty()) values_[0] = 0.0;
}

CoefficientTable CoefficientTable::prefix(std::size_t m) const {
  if (m > length()) throw ResourceError("prefix longer than the coefficient table");
  return CoefficientTable(form_, std::vector<double>(values_.begin(), values_.begin() + m + 1));
}

std::vector<__int128> ramanujan_tau(std::size_t M, Exec exec) {
  std::vector<__int128> tau(M + 1, 0);
  if (M == 0) return tau;

  // Jacobi: prod (1-q^k)^3 = sum_j (-1)^j (2j+1) q^{j(j+1)/2}
  std::vector<std::pair<std::size_t, std::int64_t>> cube;
  for (std::size_t j = 0;; ++j) {
    const std::size_t e = j * (j + 1) / 2;
    if (e >= M) break;
    cube.emplace_back(e, (j % 2 ? -1 : 1) * static_cast<std::int64_t>(2 * j + 1));
  }

  std::vector<__int128> dense(M, 0), next(M, 0);
  for (const auto& [e, c] : cube) dense[e] = c;

  bool overflow = false;
  const bool parallel = exec == Exec::Parallel;
  for (int power = 2; power <= 8; ++power) {
#pragma omp parallel for schedule(dynamic, 256) if (parallel) reduction(|| : overflow)
    for (std::size_t n = 0; n < M; ++n) {
      __int128 acc = 0;
      for (const auto& [e, c] : cube) {
        if (e > n) break;
        __int128 term;
        if (__builtin_mul_overflow(dense[n - e], static_cast<__int128>(c), &term) ||
            __builtin_add_overflow(acc, term, &acc)) {
          overflow = true;
          break;
        }
      }
      next[n] = acc;
    }
    if (overflow) {
      throw ResourceError("tau expansion overflowed 128-bit integers at length " +
                          std::to_string(M));
    }
    dense.swap(next);
  }
  for (std::size_t n = 1; n <= M; ++n) tau[n] = dense[n - 1];
  return tau;
}

CoefficientTable delta_coefficients(std::size_t M, Exec exec) {
  if (M == 0) throw UsageError("coefficient table length must be positive");
  const auto tau = ramanujan_tau(M, exec);
  std::vector<double> values(M + 1, 0.0);
  for (std::size_t n = 1; n <= M; ++n) {
    const long double t = static_cast<long double>(tau[n]);
    values[n] = static_cast<double>(t / std::pow(static_cast<long double>(n), 5.5L));
  }
  return CoefficientTable(delta_form(), std::move(values));
}

namespace {

std::int64_t mod(std::int64_t a, std::int64_t p) {
  const std::int64_t r = a % p;
  return r < 0 ? r + p : r;
}

std::int64_t count_trace_p2(const CurveCoefficients& c) {
  std::int64_t affine = 0;
  for (std::int64_t x = 0; x < 2; ++x) {
    for (std::int64_t y = 0; y < 2; ++y) {
      const std::int64_t lhs = y * y + c.a1 * x * y + c.a3 * y;
      const std::int64_t rhs = x * x * x + c.a2 * x * x + c.a4 * x + c.a6;
      if (mod(lhs - rhs, 2) == 0) ++affine;
    }
  }
  return 2 + 1 - (affine + 1);
}

// -sum_x (f(x)/p) for f = 4x^3 + b2 x^2 + 2 b4 x + b6, Legendre symbol read from a square table
std::int64_t count_trace_odd(const CurveCoefficients& c, std::int64_t p) {
  const std::int64_t b2 = c.a1 * c.a1 + 4 * c.a2;
  const std::int64_t b4 = 2 * c.a4 + c.a1 * c.a3;
  const std::int64_t b6 = c.a3 * c.a3 + 4 * c.a6;

  std::vector<std::int8_t> chi(static_cast<std::size_t>(p), -1);
  chi[0] = 0;
  for (std::int64_t y = 1, sq = 1; y <= p / 2; ++y) {
    chi[static_cast<std::size_t>(sq)] = 1;
    sq += 2 * y + 1;
    if (sq >= p) sq %= p;
  }

  // forward differences of the cubic at x = 0
  const std::int64_t f0 = mod(b6, p);
  const std::int64_t f1 = mod(4 + b2 + 2 * b4 + b6, p);
  const std::int64_t f2 = mod(32 + 4 * b2 + 4 * b4 + b6, p);
  const std::int64_t f3 = mod(108 + 9 * b2 + 6 * b4 + b6, p);
  std::int64_t f = f0;
  std::int64_t d1 = mod(f1 - f0, p);
  std::int64_t d2 = mod(f2 - 2 * f1 + f0, p);
  const std::int64_t d3 = mod(f3 - 3 * f2 + 3 * f1 - f0, p);

  std::int64_t sum = 0;
  for (std::int64_t x = 0; x < p; ++x) {
    sum += chi[static_cast<std::size_t>(f)];
    f += d1;
    if (f >= p) f -= p;
    d1 += d2;
    if (d1 >= p) d1 -= p;
    d2 += d3;
    if (d2 >= p) d2 -= p;
  }
  return -sum;
}

}  // namespace

std::int64_t curve_trace(const CurveCoefficients& c, std::uint64_t p) {
  if (p == 2) return count_trace_p2(c);
  return count_trace_odd(c, static_cast<std::int64_t>(p));
}

std::int64_t elliptic_ap(const Newform& curve, std::uint64_t p) {
  if (!curve.curve) throw UsageError("form " + curve.label + " has no Weierstrass model");
  if (p < 2) throw UsageError("elliptic_ap needs a prime");
  if (curve.level % static_cast<std::int64_t>(p) == 0) {
    throw DomainError("bad reduction: p = " + std::to_string(p) + " divides the level of " +
                      curve.label);
  }
  return curve_trace(*curve.curve, p);
}

std::vector<double> elliptic_prime_values(const Newform& curve, std::size_t M,
                                          const arith::SieveTables& sieve, Exec exec) {
  if (!curve.curve) throw UsageError("form " + curve.label + " has no Weierstrass model");
  if (M > sieve.limit()) throw ResourceError("coefficient length exceeds the sieve limit");
  std::vector<double> values(M + 1, std::numeric_limits<double>::quiet_NaN());
  std::vector<std::uint32_t> primes;
  for (const std::uint32_t p : sieve.primes()) {
    if (p > M) break;
    primes.push_back(p);
  }
  const CurveCoefficients c = *curve.curve;
  const bool parallel = exec == Exec::Parallel;
  const std::int64_t count = static_cast<std::int64_t>(primes.size());
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
  for (std::int64_t i = count - 1; i >= 0; --i) {
    const std::uint32_t p = primes[static_cast<std::size_t>(i)];
    values[p] = static_cast<double>(curve_trace(c, p)) / std::sqrt(static_cast<double>(p));
  }
  return values;
}

CoefficientTable hecke_extend(const Newform& form, std::span<const double> prime_values,
                              std::size_t M, const arith::SieveTables& sieve) {
  if (M == 0) throw UsageError("coefficient table length must be positive");
  if (M > sieve.limit()) throw ResourceError("coefficient length exceeds the sieve limit");
  if (prime_values.size() < M + 1) {
    throw DomainError("missing prime values: need primes up to " + std::to_string(M));
  }
  std::vector<double> lam(M + 1, 0.0);
  lam[1] = 1.0;
  for (std::size_t n = 2; n <= M; ++n) {
    const std::uint64_t p = sieve.smallest_prime_factor(n);
    std::size_t m = n, pk = 1;
    while (m % p == 0) {
      m /= p;
      pk *= p;
    }
    if (m > 1) {
      lam[n] = lam[pk] * lam[m];
    } else if (pk == p) {
      const double v = prime_values[p];
      if (std::isnan(v)) throw DomainError("missing prime value for p = " + std::to_string(p));
      lam[n] = v;
    } else {
      const double chi0 = (form.level % static_cast<std::int64_t>(p) == 0) ? 0.0 : 1.0;
      lam[n] = lam[p] * lam[n / p] - chi0 * lam[n / p / p];
    }
  }
  CoefficientTable table(form, std::move(lam));
  check_deligne(table, sieve);
  return table;
}

CoefficientTable elliptic_coefficients(const Newform& curve, std::size_t M,
                                       const arith::SieveTables& sieve, Exec exec) {
  const auto primes = elliptic_prime_values(curve, M, sieve, exec);
  return hecke_extend(curve, primes, M, sieve);
}

void check_deligne(const CoefficientTable& table, const arith::SieveTables& sieve) {
  const std::size_t M = table.length();
  if (M > sieve.limit()) throw ResourceError("coefficient length exceeds the sieve limit");
  for (std::size_t n = 1; n <= M; ++n) {
    const double bound = sieve.divisor_count(n) * (1.0 + 1e-9);
    if (!(std::abs(table[n]) <= bound)) {
      throw DomainError("Deligne bound violated for " + table.form().label + " at n = " +
                        std::to_string(n));
    }
  }
}

ThetaProbe theta_series(const CoefficientTable& table, double t) {
  const Newform& f = table.form();
  const double c = 2.0 * std::numbers::pi * t / std::sqrt(static_cast<double>(f.level));
  const double half = 0.5 * f.weight;
  const double expo = 0.5 * (f.weight - 1);

  double sum = 0.0;
  for (std::size_t n = 1; n <= table.length(); ++n) {
    const double x = static_cast<double>(n);
    sum += table[n] * std::exp(expo * std::log(x) - c * x);
    // tail of sum_{m>n} 2 m^{κ/2} e^{-cm}; terms decrease with ratio r once r < 1
    const double next = x + 1.0;
    const double ratio = std::pow(1.0 + 1.0 / next, half) * std::exp(-c);
    if (ratio < 1.0 && next > half / c) {
      const double tail = 2.0 * std::exp(half * std::log(next) - c * next) / (1.0 - ratio);
      if (tail < 1e-12 && tail < 1e-16 + 1e-13 * std::abs(sum)) {
        return {t, sum, tail, n};
      }
    }
  }
  throw ResourceError("coefficient table for " + f.label + " too short for theta probe at t = " +
                      std::to_string(t));
}

FrickeProbe fricke_probe(const CoefficientTable& table, double t) {
  if (!(t > 0.0)) throw UsageError("Fricke probe needs t > 0");
  FrickeProbe out;
  out.t = t;
  out.at_t = theta_series(table, t);
  out.at_inv = theta_series(table, 1.0 / t);
  const Newform& f = table.form();
  out.determinate = std::abs(out.at_t.value) >= 10.0 * out.at_t.tail_bound &&
                    std::abs(out.at_inv.value) >= 10.0 * out.at_inv.tail_bound;
  const double scale = f.i_power() * std::pow(t, f.weight) * out.at_t.value;
  out.ratio = out.at_inv.value / scale;
  return out;
}

int determine_fricke_sign(const CoefficientTable& table, double t) {
  if (!(t > 0.0) || t == 1.0) throw UsageError("Fricke probe needs t > 0, t != 1");
  const double base = t > 1.0 ? t : 1.0 / t;
  const double second = std::abs(base - 1.5) > 0.1 ? 1.5 : 1.25;

  int sign = 0;
  bool any = false;
  for (const double probe : {base, second}) {
    const FrickeProbe r = fricke_probe(table, probe);
    if (!r.determinate) continue;
    const int s = r.ratio > 0 ? 1 : -1;
    if (std::abs(r.ratio - s) > 1e-6) {
      throw NumericalError("Fricke probe at t = " + std::to_string(probe) +
                           " gave ratio " + std::to_string(r.ratio) + ", not ±1");
    }
    if (any && s != sign) throw NumericalError("Fricke probes disagree");
    sign = s;
    any = true;
  }
  if (!any) throw NumericalError("Fricke sign indeterminate: theta values below tail bound");
  return sign;
}

}  // namespace twmo::forms
