#pragma once

#include <complex>
#include <cstddef>

namespace twmo::kernels {

/// The AFE kernels for one weight κ: W1 (central value) and W2 (central derivative).
struct KernelSuite {
  int weight;
  int a;  // κ/2
  double tail_tolerance;
  int w2_quadrature_nodes;

  /// Throws UsageError unless κ is even and positive and tolerance > 0.
  explicit KernelSuite(int weight, double tail_tolerance = 1e-10, int w2_quadrature_nodes = 400);
};

/// W1(x) = (1/2πi)∫_(3) (2πx)^{-w} Γ(κ/2+w)/Γ(κ/2) dw/w = Q(κ/2, 2πx).
double w1(const KernelSuite& suite, double x);

/// W2(y) = (1/2πi)∫_(3) (2πy)^{-u} Γ(κ/2+u)/Γ(κ/2) du/u² = ∫_y^∞ Q(κ/2, 2πt) dt/t
///       = E1(2πy) + Σ_{k=1}^{κ/2-1} Q(k, 2πy)/k.
double w2(const KernelSuite& suite, double y);

/// W2 from the quadrature representation ∫_y^∞ Q(κ/2, 2πt) dt/t, with an analytic tail bound.
/// Throws NumericalError if doubling the panel count moves the value by more than the suite tolerance.
double w2_quadrature(const KernelSuite& suite, double y);

/// Direct numerical contour integration along Re(w) = c (oracles only).
double w1_contour(const KernelSuite& suite, double x, double c = 3.0);
double w2_contour(const KernelSuite& suite, double y, double c = 3.0);

/// γ(s) = Γ(κ/2 + s)/Γ(κ/2). Throws DomainError at poles.
std::complex<double> gamma_ratio(const KernelSuite& suite, std::complex<double> s);

/// Bound on Σ_{m>M} d(m) m^{-1/2} W(m/scale) valid for both kernels:
/// (scale/π) Σ_{j=1}^{κ/2} Q(j, 2πM/scale).
double tail_bound(const KernelSuite& suite, std::size_t M, double scale);

/// Smallest M >= 1 with tail_bound(M) < tol.
std::size_t truncation_length(const KernelSuite& suite, double scale, double tol);

}  // namespace twmo::kernels
