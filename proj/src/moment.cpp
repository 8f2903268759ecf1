#include "twmo/moment.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <string>

#include "twmo/arith.hpp"
#include "twmo/error.hpp"
#include "twmo/kernels.hpp"
#include "twmo/lfun.hpp"

namespace twmo::moment {

namespace {

struct Range {
  std::int64_t lo;
  std::int64_t hi;
};

// d with lo < 8d/X < hi
Range candidate_range(double X, const smooth::SmoothWeight& J) {
  if (!(X >= 16.0)) throw UsageError("X must be at least 16");
  const auto& s = J.support();
  const double lo = s.lo * X / 8.0;
  const double hi = s.hi * X / 8.0;
  Range r{static_cast<std::int64_t>(std::floor(lo)) + 1,
          static_cast<std::int64_t>(std::ceil(hi)) - 1};
  r.lo = std::max<std::int64_t>(r.lo, 1);
  return r;
}

template <class F>
void for_each_index(std::size_t n, Exec exec, F&& body) {
  std::vector<std::exception_ptr> errors(n);
  const std::int64_t count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::Parallel)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

Family enumerate_candidates(const forms::Newform& f, const forms::Newform& g, double X,
                            const smooth::SmoothWeight& J) {
  const Range r = candidate_range(X, J);
  Family out;
  const std::int64_t q = f.level * g.level;
  for (std::int64_t d = r.lo; d <= r.hi; ++d) {
    ++out.attrition.candidates;
    if (d % 2 == 0) {
      ++out.attrition.parity;
      continue;
    }
    if (!arith::is_squarefree_trial(static_cast<std::uint64_t>(d))) {
      ++out.attrition.squarefree;
      continue;
    }
    if (std::gcd(d, q) != 1) {
      ++out.attrition.gcd;
      continue;
    }
    const std::int64_t D = 8 * d;
    const int wf = f.i_power() * f.fricke * arith::kronecker(D, -f.level);
    const int wg = g.i_power() * g.fricke * arith::kronecker(D, -g.level);
    if (wf != 1 || wg != -1) {
      ++out.attrition.signs;
      continue;
    }
    ++out.attrition.admissible;
    out.d.push_back(d);
  }
  return out;
}

Family enumerate_admissible(const forms::Newform& f, const forms::Newform& g, double X,
                            const smooth::SmoothWeight& J) {
  Family out = enumerate_candidates(f, g, X, J);
  if (out.d.empty()) {
    const auto& a = out.attrition;
    throw DomainError("empty family at X = " + std::to_string(X) + ": candidates " +
                      std::to_string(a.candidates) + ", parity " + std::to_string(a.parity) +
                      ", squarefree " + std::to_string(a.squarefree) + ", gcd " +
                      std::to_string(a.gcd) + ", signs " + std::to_string(a.signs));
  }
  return out;
}

std::size_t required_length(const forms::Newform& form, double X, const smooth::SmoothWeight& J,
                            double tol, std::span<const double> ys) {
  const Range r = candidate_range(X, J);
  const kernels::KernelSuite suite(form.weight);
  const double scale =
      8.0 * static_cast<double>(std::max<std::int64_t>(r.hi, 1)) * std::sqrt(static_cast<double>(form.level));
  std::size_t M = kernels::truncation_length(suite, scale, 0.5 * tol);
  for (double y : ys) M = std::max(M, kernels::truncation_length(suite, y, 0.5 * tol));
  return M;
}

MomentRun run_moment(const forms::CoefficientTable& f, const forms::CoefficientTable& g, double X,
                     const smooth::SmoothWeight& J, double tol, Exec exec) {
  if (!(tol > 0.0)) throw UsageError("tolerance must be positive");
  MomentRun run;
  run.X = X;
  run.f_label = f.form().label;
  run.g_label = g.form().label;
  run.J_name = J.name();
  run.tol = tol;
  const Family fam = enumerate_candidates(f.form(), g.form(), X, J);
  run.attrition = fam.attrition;
  run.records.resize(fam.d.size());
  for_each_index(fam.d.size(), exec, [&](std::size_t i) {
    const lfun::TwistCharacter chi(fam.d[i]);
    const auto L = lfun::central_value(f, chi, tol);
    const auto Lp = lfun::central_derivative(g, chi, tol);
    run.records[i] = Record{fam.d[i], L.omega, Lp.omega, L.value, Lp.value,
                            J(8.0 * static_cast<double>(fam.d[i]) / X), L.truncation,
                            Lp.truncation};
  });
  run.S_J = recompute_S(run.records);
  double max_j = 0.0;
  for (const auto& r : run.records) {
    run.max_abs_L = std::max(run.max_abs_L, std::abs(r.L));
    run.max_abs_Lprime = std::max(run.max_abs_Lprime, std::abs(r.Lprime));
    max_j = std::max(max_j, r.Jweight);
  }
  run.error_budget = static_cast<double>(run.records.size()) * tol *
                     (run.max_abs_L + run.max_abs_Lprime) * max_j;
  run.J_hat0 = smooth::integral(J, J.quadrature().nodes);
  return run;
}

double recompute_S(std::span<const Record> records) {
  double s = 0.0;
  for (const auto& r : records) s += r.L * r.Lprime * r.Jweight;
  return s;
}

void attach_prediction(MomentRun& run, double C_fg) {
  run.C_fg = C_fg;
  run.has_prediction = !run.records.empty();
  if (!run.has_prediction) {
    run.prediction = 0.0;
    run.ratio = 0.0;
    return;
  }
  run.prediction = C_fg * run.J_hat0 * run.X * std::log(run.X);
  run.ratio = run.S_J / run.prediction;
}

IParts decompose_I(const MomentRun& run, const forms::CoefficientTable& f,
                   const forms::CoefficientTable& g, double Y, Exec exec) {
  if (!(Y > 0.0)) throw UsageError("split parameter Y must be positive");
  const kernels::KernelSuite suite_f(f.form().weight);
  const kernels::KernelSuite suite_g(g.form().weight);
  const std::size_t n = run.records.size();
  std::vector<std::array<double, 4>> parts(n);
  for_each_index(n, exec, [&](std::size_t i) {
    const Record& r = run.records[i];
    const lfun::TwistCharacter chi(r.d);
    const double a = (1.0 + r.omega_f) *
                     lfun::kernel_sum(f, chi, suite_f, lfun::Kernel::W1, Y, 0.5 * run.tol).value;
    const double ap = (1.0 - r.omega_g) *
                      lfun::kernel_sum(g, chi, suite_g, lfun::Kernel::W2, Y, 0.5 * run.tol).value;
    const double b = r.L - a;
    const double bp = r.Lprime - ap;
    parts[i] = {a * ap * r.Jweight, a * bp * r.Jweight, b * ap * r.Jweight, b * bp * r.Jweight};
  });
  IParts out;
  out.Y = Y;
  for (const auto& p : parts) {
    for (std::size_t k = 0; k < 4; ++k) out.literal[k] += p[k];
  }
  for (std::size_t k = 0; k < 4; ++k) out.I[k] = 4.0 * out.literal[k];
  const double quarter = 0.25 * (out.I[0] + out.I[1] + out.I[2] + out.I[3]);
  out.identity_residual = std::abs(quarter - run.S_J);
  return out;
}

}  // namespace twmo::moment
