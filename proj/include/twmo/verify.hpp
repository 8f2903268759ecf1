#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "twmo/arith.hpp"
#include "twmo/forms.hpp"
#include "twmo/gauss.hpp"

namespace twmo::verify {

struct CaseResult {
  std::string suite;
  std::string name;
  bool pass = true;
  nlohmann::json detail;
};

struct SuiteResult {
  std::string suite;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::optional<CaseResult> first_failure;
  bool passed() const noexcept { return cases > 0 && failures == 0; }
};

/// Shared sieve and built-in coefficient tables (Δ, 11a, 37a).
struct Tables {
  arith::SieveTables sieve;
  forms::CoefficientTable delta;
  forms::CoefficientTable e11;
  forms::CoefficientTable e37;
  std::vector<const forms::CoefficientTable*> all() const { return {&delta, &e11, &e37}; }
};

/// Tables of length M, read from / written to `cache_dir` when given.
Tables build_tables(std::size_t M, const std::optional<std::string>& cache_dir = std::nullopt);

/// Receives every case; writes one JSON line per case when `jsonl` is set.
class Recorder {
 public:
  Recorder(std::string suite, std::ostream* jsonl)
      : result_{std::move(suite), 0, 0, std::nullopt}, jsonl_(jsonl) {}
  void add(std::string name, bool pass, nlohmann::json detail, std::size_t weight = 1);
  const SuiteResult& result() const noexcept { return result_; }

 private:
  SuiteResult result_;
  std::ostream* jsonl_;
};

using GaussFn = std::function<gauss::GaussValue(std::int64_t, std::int64_t, const arith::SieveTables&)>;

/// Closed-form G_k(n) against direct summation, n odd <= n_max, |k| <= k_max, error <= 1e-8·n.
/// One JSON line per n; `fast` defaults to gauss::gauss_fast.
SuiteResult verify_gauss(const arith::SieveTables& sieve, std::ostream* jsonl = nullptr,
                         GaussFn fast = {}, std::int64_t n_max = 3000, std::int64_t k_max = 50);

/// Both sides of the character Poisson formula for `count` seeded random (n, Z), F ∈ {J, G}.
SuiteResult verify_poisson(const arith::SieveTables& sieve, std::ostream* jsonl = nullptr,
                           int count = 50, std::uint64_t seed = 20240917);

/// W1, W2 closed forms against contour integrals and the W2 quadrature; W1(0+) = 1.
SuiteResult verify_kernels(std::ostream* jsonl = nullptr);

/// Balanced AFE independence of A, vanishing for root number -1, and L' against the
/// Richardson difference of the general-s AFE.
SuiteResult verify_afe(const Tables& tables, std::ostream* jsonl = nullptr, int twists = 20,
                       int derivative_twists = 10);

/// Factorization identity, stabilization, two codings of the local factors, the Sym² factor
/// two ways, and the degenerate-sign vanishing on a square level.
SuiteResult verify_euler(const Tables& tables, std::ostream* jsonl = nullptr,
                         std::vector<std::uint64_t> cutoffs = {1000, 10000, 100000});

/// First `count` admissible twists d (by |d|, positive first) for a form: odd, squarefree,
/// coprime to the level; `omega` = 0 accepts both root numbers.
std::vector<std::int64_t> twist_parameters(const forms::Newform& form, int count, int omega = 0);

}  // namespace twmo::verify
