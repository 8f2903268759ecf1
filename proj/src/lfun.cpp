#include "twmo/lfun.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "twmo/arith.hpp"
#include "twmo/error.hpp"
#include "twmo/special.hpp"

namespace twmo::lfun {

TwistCharacter::TwistCharacter(std::int64_t d) : d_(d) {
  if (d == 0 || d % 2 == 0) throw UsageError("twist parameter d must be odd and nonzero");
  if (!arith::is_squarefree_trial(static_cast<std::uint64_t>(d < 0 ? -d : d))) {
    throw UsageError("twist parameter d = " + std::to_string(d) + " is not squarefree");
  }
  const std::int64_t period = 8 * (d < 0 ? -d : d);
  table_.resize(static_cast<std::size_t>(period));
  for (std::int64_t n = 0; n < period; ++n) {
    table_[static_cast<std::size_t>(n)] = static_cast<std::int8_t>(arith::kronecker(8 * d, n));
  }
}

int TwistCharacter::operator()(std::int64_t n) const { return arith::kronecker(D(), n); }

const char* method_name(Method m) {
  switch (m) {
    case Method::Afe: return "afe";
    case Method::BalancedAfe: return "balanced-afe";
    case Method::GeneralSOracle: return "general-s-oracle";
  }
  return "afe";
}

int omega(const forms::Newform& form, const TwistCharacter& chi) {
  if (std::gcd(chi.D(), form.level) != 1) {
    throw DomainError("ramified twist: gcd(8·" + std::to_string(chi.d()) + ", " +
                      std::to_string(form.level) + ") > 1");
  }
  return form.i_power() * form.fricke * arith::kronecker(chi.D(), -form.level);
}

double afe_scale(const forms::Newform& form, const TwistCharacter& chi) {
  return 8.0 * std::abs(static_cast<double>(chi.d())) * std::sqrt(static_cast<double>(form.level));
}

KernelSum kernel_sum(const forms::CoefficientTable& table, const TwistCharacter& chi,
                     const kernels::KernelSuite& suite, Kernel kernel, double scale, double tol) {
  const std::size_t M = kernels::truncation_length(suite, scale, tol);
  if (M > table.length()) {
    throw ResourceError("coefficient table for " + table.form().label + " has length " +
                        std::to_string(table.length()) + ", need " + std::to_string(M));
  }
  const auto& period = chi.period_table();
  const std::size_t P = period.size();
  const double inv_scale = 1.0 / scale;
  KernelSum out;
  std::size_t r = 1;
  for (std::size_t m = 1; m <= M; ++m, ++r) {
    if (r == P) r = 0;
    const int c = period[r];
    if (c == 0) continue;
    const double lam = table[m];
    if (lam == 0.0) continue;
    const double x = static_cast<double>(m) * inv_scale;
    const double w = kernel == Kernel::W1 ? kernels::w1(suite, x) : kernels::w2(suite, x);
    const double term = lam * w / std::sqrt(static_cast<double>(m));
    out.value += c * term;
    out.gross += std::abs(term);
  }
  out.terms = M;
  out.tail = kernels::tail_bound(suite, M, scale);
  return out;
}

namespace {

void check_admissible(const forms::Newform& form, const TwistCharacter& chi) {
  if (std::gcd(chi.d(), 2 * form.level) != 1) {
    throw DomainError("ramified twist: gcd(" + std::to_string(chi.d()) + ", 2·" +
                      std::to_string(form.level) + ") > 1");
  }
}

}  // namespace

CentralValue central_value(const forms::CoefficientTable& table, const TwistCharacter& chi,
                           double tol) {
  const auto& form = table.form();
  check_admissible(form, chi);
  CentralValue out;
  out.omega = omega(form, chi);
  out.method = Method::Afe;
  if (out.omega == -1) return out;
  const kernels::KernelSuite suite(form.weight);
  const KernelSum s = kernel_sum(table, chi, suite, Kernel::W1, afe_scale(form, chi), 0.5 * tol);
  out.value = 2.0 * s.value;
  out.truncation = s.terms;
  out.tail_estimate = 2.0 * s.tail;
  out.gross_mass = 2.0 * s.gross;
  return out;
}

CentralValue central_value_balanced(const forms::CoefficientTable& table,
                                    const TwistCharacter& chi, double A, double tol) {
  if (!(A > 0.0)) throw UsageError("balance parameter A must be positive");
  const auto& form = table.form();
  check_admissible(form, chi);
  const kernels::KernelSuite suite(form.weight);
  const double scale = afe_scale(form, chi);
  CentralValue out;
  out.omega = omega(form, chi);
  out.method = Method::BalancedAfe;
  const KernelSum first = kernel_sum(table, chi, suite, Kernel::W1, scale / A, 0.5 * tol);
  const KernelSum second = kernel_sum(table, chi, suite, Kernel::W1, scale * A, 0.5 * tol);
  out.value = first.value + out.omega * second.value;
  out.truncation = std::max(first.terms, second.terms);
  out.tail_estimate = first.tail + second.tail;
  out.gross_mass = first.gross + second.gross;
  return out;
}

CentralValue central_derivative(const forms::CoefficientTable& table, const TwistCharacter& chi,
                                double tol) {
  const auto& form = table.form();
  check_admissible(form, chi);
  CentralValue out;
  out.omega = omega(form, chi);
  out.method = Method::Afe;
  if (out.omega != -1) {
    throw DomainError("central derivative formula needs root number -1; " + form.label +
                      " twisted by d = " + std::to_string(chi.d()) + " has root number +1");
  }
  const kernels::KernelSuite suite(form.weight);
  const KernelSum s = kernel_sum(table, chi, suite, Kernel::W2, afe_scale(form, chi), 0.5 * tol);
  out.value = 2.0 * s.value;
  out.truncation = s.terms;
  out.tail_estimate = 2.0 * s.tail;
  out.gross_mass = 2.0 * s.gross;
  return out;
}

std::complex<double> afe_general_s(const forms::CoefficientTable& table,
                                   const TwistCharacter& chi, std::complex<double> s,
                                   double tol) {
  using cplx = std::complex<double>;
  if (std::abs(s - 0.5) > 0.1) throw UsageError("general-s AFE is only used for |s - 1/2| <= 0.1");
  const auto& form = table.form();
  check_admissible(form, chi);
  const int w = omega(form, chi);
  const double scale = afe_scale(form, chi);
  const double shift = 0.5 * (form.weight - 1);
  const cplx a_s = s + shift;
  const cplx a_dual = 1.0 - s + shift;
  const cplx lg_s = special::log_gamma(a_s);
  const cplx lg_dual = special::log_gamma(a_dual);

  // Re(a_s) <= κ/2 + 0.1 and m^{-Re s} <= m^{-0.4}: bound with the next weight and a margin
  const kernels::KernelSuite bound_suite(form.weight + 2);
  const std::size_t M = kernels::truncation_length(bound_suite, scale, 1e-2 * tol);
  if (M > table.length()) {
    throw ResourceError("coefficient table for " + form.label + " too short for general-s AFE");
  }

  cplx direct = 0.0, dual = 0.0;
  for (std::size_t m = 1; m <= M; ++m) {
    const int c = chi.at(m);
    if (c == 0 || table[m] == 0.0) continue;
    const double x = 2.0 * std::numbers::pi * static_cast<double>(m) / scale;
    const double lm = std::log(static_cast<double>(m));
    const double coeff = c * table[m];
    direct += coeff * std::exp(-s * lm) * special::gamma_q(a_s, x, lg_s);
    dual += coeff * std::exp(-(1.0 - s) * lm) * special::gamma_q(a_dual, x, lg_dual);
  }
  const cplx ratio =
      std::exp((1.0 - 2.0 * s) * std::log(scale / (2.0 * std::numbers::pi)) + lg_dual - lg_s);
  return direct + static_cast<double>(w) * ratio * dual;
}

double derivative_oracle(const forms::CoefficientTable& table, const TwistCharacter& chi,
                         double h, double tol) {
  auto diff = [&](double step) {
    const double up = afe_general_s(table, chi, 0.5 + step, tol).real();
    const double down = afe_general_s(table, chi, 0.5 - step, tol).real();
    return (up - down) / (2.0 * step);
  };
  const double d1 = diff(h);
  const double d2 = diff(2.0 * h);
  return (4.0 * d1 - d2) / 3.0;
}

}  // namespace twmo::lfun
