#include "twmo/special.hpp"

#include <cmath>
#include <numbers>

#include "twmo/error.hpp"

namespace twmo::special {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

}  // namespace

cplx log_gamma(cplx z) {
  if (z.real() < 0.5) {
    // reflection: log Γ(z) = log π - log sin(πz) - log Γ(1 - z)
    return std::log(kPi) - log_sin(kPi * z) - log_gamma(1.0 - z);
  }
  cplx shift = 0.0;
  while (std::abs(z) < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  // Stirling series with Bernoulli terms B_{2k}/(2k(2k-1) z^{2k-1})
  static constexpr double kCoef[] = {1.0 / 12.0,        -1.0 / 360.0,     1.0 / 1260.0,
                                     -1.0 / 1680.0,     1.0 / 1188.0,     -691.0 / 360360.0,
                                     1.0 / 156.0,       -3617.0 / 122400.0};
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx series = 0.0;
  cplx pw = inv;
  for (const double c : kCoef) {
    series += c * pw;
    pw *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series - shift;
}

cplx log_sin(cplx w) {
  const double y = w.imag();
  const cplx i(0.0, 1.0);
  if (std::abs(y) < 20.0) return std::log(std::sin(w));
  if (y > 0) {
    // sin w = e^{-iw} (1 - e^{2iw}) (i/2)
    return -i * w + std::log(0.5 * i) + std::log(1.0 - std::exp(2.0 * i * w));
  }
  // sin w = e^{iw} (1 - e^{-2iw}) / (2i)
  return i * w + std::log(-0.5 * i) + std::log(1.0 - std::exp(-2.0 * i * w));
}

double gamma_q_int(int a, double x) {
  if (a < 1) throw UsageError("gamma_q_int needs a >= 1");
  if (x <= 0.0) return 1.0;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < a; ++k) {
    term *= x / k;
    sum += term;
  }
  return std::exp(-x) * sum;
}

double expint_e1(double x) {
  if (!(x > 0.0)) throw UsageError("E1 needs x > 0");
  if (x > 700.0) return 0.0;
  return -std::expint(-x);
}

cplx gamma_q(cplx a, double x) { return gamma_q(a, x, log_gamma(a)); }

cplx gamma_q(cplx a, double x, cplx log_gamma_a) {
  if (!(a.real() > 0.0)) throw UsageError("gamma_q needs Re a > 0");
  if (!(x > 0.0)) return 1.0;
  const cplx log_prefactor = a * std::log(x) - x - log_gamma_a;
  if (x < a.real() + 1.0) {
    // P(a, x) = x^a e^{-x} / Γ(a+1) Σ x^n / ((a+1)...(a+n))
    cplx term = 1.0 / a, sum = term;
    for (int n = 1; n < 1000; ++n) {
      term *= x / (a + static_cast<double>(n));
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return 1.0 - std::exp(log_prefactor) * sum;
  }
  // modified Lentz for Γ(a, x) = x^a e^{-x} / (x + 1 - a - 1(1-a)/(x + 3 - a - ...))
  constexpr double tiny = 1e-300;
  cplx b = x + 1.0 - a;
  cplx c = 1.0 / tiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 1; i < 10000; ++i) {
    const cplx an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const cplx delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) return std::exp(log_prefactor) * h;
  }
  throw NumericalError("incomplete gamma continued fraction did not converge");
}

}  // namespace twmo::special
