#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twmo/arith.hpp"
#include "twmo/exec.hpp"

namespace twmo::forms {

enum class FormKind { Eta24Delta, EllipticCurve, Imported };

struct CurveCoefficients {
  std::int64_t a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
};

/// A Hecke newform of even weight and odd level, with its Fricke eigenvalue.
struct Newform {
  int weight = 2;
  std::int64_t level = 1;
  int fricke = 1;
  FormKind kind = FormKind::EllipticCurve;
  std::optional<CurveCoefficients> curve;
  std::string label;

  /// i^weight, which is ±1 for even weight.
  int i_power() const noexcept { return (weight % 4 == 0) ? 1 : -1; }
};

/// Throws UsageError on odd weight, even level or a Fricke sign other than ±1.
void validate(const Newform& form);

Newform delta_form();
Newform curve_11a();
Newform curve_37a();
/// "delta", "11a" or "37a"; throws UsageError otherwise.
Newform builtin_form(const std::string& label);

/// Normalized Hecke eigenvalues λ(1..M), λ(n) = a(n) / n^((κ-1)/2).
class CoefficientTable {
 public:
  CoefficientTable() = default;
  CoefficientTable(Newform form, std::vector<double> values);

  const Newform& form() const noexcept { return form_; }
  std::size_t length() const noexcept { return values_.empty() ? 0 : values_.size() - 1; }
  double operator[](std::size_t n) const noexcept { return values_[n]; }
  /// Index 0 holds 0; index n holds λ(n).
  std::span<const double> values() const noexcept { return values_; }

  /// Leading prefix of length m (m <= length()).
  CoefficientTable prefix(std::size_t m) const;

 private:
  Newform form_;
  std::vector<double> values_;
};

/// Exact τ(1..M) from q·(Σ(-1)^j(2j+1)q^{j(j+1)/2})^8; element 0 is unused.
/// Throws ResourceError if an intermediate coefficient overflows 128 bits
/// (no overflow occurs below M = 10^6).
std::vector<__int128> ramanujan_tau(std::size_t M, Exec exec = Exec::Parallel);

CoefficientTable delta_coefficients(std::size_t M, Exec exec = Exec::Parallel);

/// a_p = p + 1 - #E(F_p). p = 2 is counted directly on the integral model.
/// Throws DomainError when p divides the level.
std::int64_t elliptic_ap(const Newform& curve, std::uint64_t p);

/// Same count without the good-reduction check (a_p in {0, ±1} at bad primes on a minimal model).
std::int64_t curve_trace(const CurveCoefficients& c, std::uint64_t p);

/// λ(p) = a_p/√p for every prime p <= M, stored at index p (NaN elsewhere).
std::vector<double> elliptic_prime_values(const Newform& curve, std::size_t M,
                                          const arith::SieveTables& sieve,
                                          Exec exec = Exec::Parallel);

/// Extends prime values to all n <= M with the Hecke recursion and multiplicativity.
/// Throws DomainError naming the first prime with no value, or on a Deligne-bound violation.
CoefficientTable hecke_extend(const Newform& form, std::span<const double> prime_values,
                              std::size_t M, const arith::SieveTables& sieve);

CoefficientTable elliptic_coefficients(const Newform& curve, std::size_t M,
                                       const arith::SieveTables& sieve,
                                       Exec exec = Exec::Parallel);

/// Throws DomainError if |λ(n)| > d(n) anywhere in the table.
void check_deligne(const CoefficientTable& table, const arith::SieveTables& sieve);

struct ThetaProbe {
  double t;
  double value;       // F(t) = Σ a(n) e^{-2π n t/√q}
  double tail_bound;  // bound on the discarded terms
  std::size_t terms;
};

/// Theta-type series F(t) with a Deligne-based tail bound below 1e-12.
/// Throws ResourceError if the table is too short for that.
ThetaProbe theta_series(const CoefficientTable& table, double t);

struct FrickeProbe {
  double t = 0.0;
  ThetaProbe at_t{};
  ThetaProbe at_inv{};
  double ratio = 0.0;  // F(1/t) / (i^κ t^κ F(t)), which is η
  bool determinate = false;  // both |F| at least 10 times their tail bounds
};

FrickeProbe fricke_probe(const CoefficientTable& table, double t);

/// Fricke sign η solving F(1/t) = η i^κ t^κ F(t); cross-checked at a second probe.
/// Throws NumericalError (indeterminate / inconsistent probes).
int determine_fricke_sign(const CoefficientTable& table, double t);

}  // namespace twmo::forms
