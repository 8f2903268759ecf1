#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "twmo/exec.hpp"
#include "twmo/forms.hpp"
#include "twmo/smooth.hpp"

namespace twmo::moment {

/// Per-condition attrition; the counts partition the candidate range.
struct Attrition {
  std::size_t candidates = 0;
  std::size_t parity = 0;
  std::size_t squarefree = 0;
  std::size_t gcd = 0;
  std::size_t signs = 0;
  std::size_t admissible = 0;
};

struct Family {
  std::vector<std::int64_t> d;  // increasing
  Attrition attrition;
};

/// All d with 8d/X inside the open support of J, d odd squarefree, gcd(d, q_f q_g) = 1,
/// ω(f⊗χ_{8d}) = +1 and ω(g⊗χ_{8d}) = -1. Never throws on an empty result.
Family enumerate_candidates(const forms::Newform& f, const forms::Newform& g, double X,
                            const smooth::SmoothWeight& J);

/// Same, but throws DomainError (with the attrition counts) when no d qualifies.
Family enumerate_admissible(const forms::Newform& f, const forms::Newform& g, double X,
                            const smooth::SmoothWeight& J);

struct Record {
  std::int64_t d;
  int omega_f;
  int omega_g;
  double L;
  double Lprime;
  double Jweight;
  std::size_t truncation_f;
  std::size_t truncation_g;
};

struct IParts {
  double Y = 0.0;
  std::array<double, 4> I{};        // 4 Σ 𝒜𝒜'J, 4 Σ 𝒜ℬ'J, 4 Σ ℬ𝒜'J, 4 Σ ℬℬ'J over the family
  std::array<double, 4> literal{};  // the same sums without the factor 4
  double identity_residual = 0.0;   // |(1/4)ΣI - S_J|
};

struct MomentRun {
  double X = 0.0;
  std::string f_label;
  std::string g_label;
  std::string J_name;
  double tol = 0.0;
  std::vector<Record> records;
  Attrition attrition;
  double S_J = 0.0;
  double J_hat0 = 0.0;
  double C_fg = 0.0;
  bool has_prediction = false;
  double prediction = 0.0;
  double ratio = 0.0;
  double max_abs_L = 0.0;
  double max_abs_Lprime = 0.0;
  double error_budget = 0.0;  // #records · tol · (max|L| + max|L'|) · max J
  std::vector<IParts> decompositions;
};

/// Longest table prefix any admissible d (or a split at any Y in `ys`) can touch.
std::size_t required_length(const forms::Newform& form, double X, const smooth::SmoothWeight& J,
                            double tol, std::span<const double> ys = {});

/// S_J(f, g'; X) = Σ L(1/2, f⊗χ_{8d}) L'(1/2, g⊗χ_{8d}) J(8d/X) over the admissible family.
/// Per-d values are computed in parallel and summed in increasing d.
MomentRun run_moment(const forms::CoefficientTable& f, const forms::CoefficientTable& g, double X,
                     const smooth::SmoothWeight& J, double tol, Exec exec = Exec::Parallel);

/// Σ L·L'·J over the records, left to right.
double recompute_S(std::span<const Record> records);

/// Sets C_fg, prediction C·Ĵ(0)·X·log X and ratio; suppressed for an empty family.
void attach_prediction(MomentRun& run, double C_fg);

/// Splits each L and L' at Y into 𝒜 + ℬ and returns the four partial moments.
IParts decompose_I(const MomentRun& run, const forms::CoefficientTable& f,
                   const forms::CoefficientTable& g, double Y, Exec exec = Exec::Parallel);

}  // namespace twmo::moment
