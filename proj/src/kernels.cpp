#include "twmo/kernels.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "twmo/error.hpp"
#include "twmo/quadrature.hpp"
#include "twmo/special.hpp"

namespace twmo::kernels {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

KernelSuite::KernelSuite(int weight_, double tail_tolerance_, int w2_quadrature_nodes_)
    : weight(weight_), a(weight_ / 2), tail_tolerance(tail_tolerance_),
      w2_quadrature_nodes(w2_quadrature_nodes_) {
  if (weight <= 0 || weight % 2 != 0) throw UsageError("kernel weight must be even and positive");
  if (!(tail_tolerance > 0.0)) throw UsageError("kernel tail tolerance must be positive");
  if (w2_quadrature_nodes <= 0) throw UsageError("W2 quadrature node count must be positive");
}

double w1(const KernelSuite& suite, double x) {
  if (!(x > 0.0)) throw UsageError("W1 needs x > 0");
  return special::gamma_q_int(suite.a, kTwoPi * x);
}

double w2(const KernelSuite& suite, double y) {
  if (!(y > 0.0)) throw UsageError("W2 needs y > 0");
  const double z = kTwoPi * y;
  // Q(k, z) = e^{-z} S_k with S_k = Σ_{j<k} z^j/j!
  double partial = 1.0, term = 1.0, acc = 0.0;
  for (int k = 1; k < suite.a; ++k) {
    acc += partial / k;
    term *= z / k;
    partial += term;
  }
  return special::expint_e1(z) + std::exp(-z) * acc;
}

double w2_quadrature(const KernelSuite& suite, double y) {
  if (!(y > 0.0)) throw UsageError("W2 needs y > 0");
  // t = y e^u: ∫_0^U Q(a, 2πy e^u) du, tail past t_U bounded by (1/(2π t_U)) Σ_j Q(j, 2π t_U)
  const double z0 = kTwoPi * y;
  const double z_cut = std::max(z0, suite.a + 60.0);
  const double U = std::log(z_cut / z0);
  double tail = 0.0;
  for (int j = 1; j <= suite.a; ++j) tail += special::gamma_q_int(j, z_cut);
  tail /= z_cut;
  if (U <= 0.0) return tail;

  auto f = [&](double u) { return special::gamma_q_int(suite.a, z0 * std::exp(u)); };
  const int panels = std::max(1, suite.w2_quadrature_nodes / 20);
  const double coarse = quad::integrate(f, 0.0, U, panels);
  const double fine = quad::integrate(f, 0.0, U, 2 * panels);
  if (std::abs(fine - coarse) > suite.tail_tolerance) {
    throw NumericalError("W2 quadrature did not converge at y = " + std::to_string(y));
  }
  return fine + tail;
}

namespace {

// (1/2π) ∫ (2πx)^{-(c+it)} γ(c+it) / (c+it)^order dt, integrand conjugate-symmetric in t
double contour(const KernelSuite& suite, double x, double c, int order) {
  const double log_base = std::log(kTwoPi * x);
  const double lg_a = std::lgamma(static_cast<double>(suite.a));
  auto f = [&](double t) {
    const std::complex<double> w(c, t);
    const std::complex<double> log_val =
        special::log_gamma(static_cast<double>(suite.a) + w) - lg_a - w * log_base;
    std::complex<double> denom = w;
    if (order == 2) denom *= w;
    return (std::exp(log_val) / denom).real();
  };
  // |γ(c+it)| ~ |t|^{a+c-1/2} e^{-π|t|/2}; past t_max the integrand is below 1e-30
  double t_max = 40.0;
  while (std::abs(std::exp(special::log_gamma(static_cast<double>(suite.a) +
                                              std::complex<double>(c, t_max)) -
                           lg_a)) /
             t_max * std::exp(-c * log_base) >
         1e-30) {
    t_max *= 1.5;
  }
  const int panels = static_cast<int>(std::ceil(t_max));
  return quad::integrate(f, 0.0, t_max, panels) / std::numbers::pi;
}

}  // namespace

double w1_contour(const KernelSuite& suite, double x, double c) {
  if (!(x > 0.0) || !(c > 0.0)) throw UsageError("W1 contour needs x > 0 and c > 0");
  return contour(suite, x, c, 1);
}

double w2_contour(const KernelSuite& suite, double y, double c) {
  if (!(y > 0.0) || !(c > 0.0)) throw UsageError("W2 contour needs y > 0 and c > 0");
  return contour(suite, y, c, 2);
}

std::complex<double> gamma_ratio(const KernelSuite& suite, std::complex<double> s) {
  const std::complex<double> z = static_cast<double>(suite.a) + s;
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
    throw DomainError("gamma ratio has a pole at s = " + std::to_string(s.real()));
  }
  return std::exp(special::log_gamma(z) - std::lgamma(static_cast<double>(suite.a)));
}

double tail_bound(const KernelSuite& suite, std::size_t M, double scale) {
  const double z = kTwoPi * static_cast<double>(M) / scale;
  double s = 0.0;
  for (int j = 1; j <= suite.a; ++j) s += special::gamma_q_int(j, z);
  return scale / std::numbers::pi * s;
}

std::size_t truncation_length(const KernelSuite& suite, double scale, double tol) {
  if (!(scale > 0.0) || !(tol > 0.0)) throw UsageError("truncation needs scale > 0 and tol > 0");
  if (tail_bound(suite, 1, scale) < tol) return 1;
  std::size_t hi = 2;
  while (tail_bound(suite, hi, scale) >= tol) hi *= 2;
  std::size_t lo = hi / 2;  // bound(lo) >= tol, bound(hi) < tol
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (tail_bound(suite, mid, scale) < tol) hi = mid; else lo = mid;
  }
  return hi;
}

}  // namespace twmo::kernels
