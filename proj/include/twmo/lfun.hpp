#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "twmo/forms.hpp"
#include "twmo/kernels.hpp"

namespace twmo::lfun {

/// χ_D for D = 8d, d odd squarefree.
class TwistCharacter {
 public:
  /// Throws UsageError unless d is odd, nonzero and squarefree.
  explicit TwistCharacter(std::int64_t d);

  std::int64_t d() const noexcept { return d_; }
  std::int64_t D() const noexcept { return 8 * d_; }
  int chi_minus_one() const noexcept { return d_ > 0 ? 1 : -1; }
  int operator()(std::int64_t n) const;

  /// χ_D(n) for 0 <= n < |D|; χ_D is periodic mod |D|.
  const std::vector<std::int8_t>& period_table() const noexcept { return table_; }
  int at(std::size_t n) const noexcept { return table_[n % table_.size()]; }

 private:
  std::int64_t d_;
  std::vector<std::int8_t> table_;
};

enum class Method { Afe, BalancedAfe, GeneralSOracle };
const char* method_name(Method m);

struct CentralValue {
  double value = 0.0;
  int omega = 1;
  std::size_t truncation = 0;
  double tail_estimate = 0.0;
  Method method = Method::Afe;
  double gross_mass = 0.0;  // Σ |terms|, the scale for relative vanishing checks
};

/// ω(f⊗χ_D) = i^κ η_f χ_D(-q). Throws DomainError when gcd(D, q) > 1.
int omega(const forms::Newform& form, const TwistCharacter& chi);

enum class Kernel { W1, W2 };

struct KernelSum {
  double value = 0.0;
  std::size_t terms = 0;
  double tail = 0.0;
  double gross = 0.0;
};

/// Σ_{m<=M} λ(m) χ(m) m^{-1/2} W(m/scale) with M = truncation_length(scale, tol).
/// Throws ResourceError when the table is shorter than M.
KernelSum kernel_sum(const forms::CoefficientTable& table, const TwistCharacter& chi,
                     const kernels::KernelSuite& suite, Kernel kernel, double scale, double tol);

/// AFE scale 8|d|√q.
double afe_scale(const forms::Newform& form, const TwistCharacter& chi);

/// L(1/2, f⊗χ_{8d}) = (1+ω) Σ λχ m^{-1/2} W1(m/(8|d|√q)); exactly 0 when ω = -1.
CentralValue central_value(const forms::CoefficientTable& table, const TwistCharacter& chi,
                           double tol);

/// Σ λχ m^{-1/2} W1(mA/(8|d|√q)) + ω Σ λχ m^{-1/2} W1(m/(A·8|d|√q)); independent of A.
CentralValue central_value_balanced(const forms::CoefficientTable& table,
                                    const TwistCharacter& chi, double A, double tol);

/// L'(1/2, g⊗χ_{8d}) = 2 Σ λχ n^{-1/2} W2(n/(8|d|√q)). Throws DomainError when ω = +1.
CentralValue central_derivative(const forms::CoefficientTable& table, const TwistCharacter& chi,
                                double tol);

/// L(s, f⊗χ_D) near s = 1/2 from the two-sided smoothed AFE with incomplete-gamma weights.
std::complex<double> afe_general_s(const forms::CoefficientTable& table,
                                   const TwistCharacter& chi, std::complex<double> s, double tol);

/// Richardson-extrapolated central difference of afe_general_s at 1/2 (steps h and 2h).
double derivative_oracle(const forms::CoefficientTable& table, const TwistCharacter& chi,
                         double h = 1e-3, double tol = 1e-13);

}  // namespace twmo::lfun
