#pragma once

#include <complex>

namespace twmo::special {

/// Principal-branch log Γ(z) for Re z > 0 or away from the poles (Stirling with upward shift).
std::complex<double> log_gamma(std::complex<double> z);

/// log sin(w), stable for large |Im w|.
std::complex<double> log_sin(std::complex<double> w);

/// Regularized upper incomplete gamma Q(a, x) for integer a >= 1: e^{-x} Σ_{k<a} x^k/k!.
double gamma_q_int(int a, double x);

/// Exponential integral E1(x), x > 0.
double expint_e1(double x);

/// Regularized upper incomplete gamma Q(a, x) for complex a with Re a > 0 and real x > 0
/// (series below Re a + 1, Lentz continued fraction above).
std::complex<double> gamma_q(std::complex<double> a, double x);
/// Same, with log Γ(a) supplied by the caller.
std::complex<double> gamma_q(std::complex<double> a, double x, std::complex<double> log_gamma_a);

}  // namespace twmo::special
