#include "twmo/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "twmo/cache.hpp"
#include "twmo/error.hpp"
#include "twmo/euler.hpp"
#include "twmo/kernels.hpp"
#include "twmo/lfun.hpp"
#include "twmo/smooth.hpp"

namespace twmo::verify {

using nlohmann::json;

Tables build_tables(std::size_t M, const std::optional<std::string>& cache_dir) {
  Tables t{arith::SieveTables::build(static_cast<std::uint32_t>(std::max<std::size_t>(M, 1024)) + 1),
           {}, {}, {}};
  if (cache_dir) {
    const auto dir = cache::resolve_dir(cache_dir);
    t.delta = cache::load_or_build(forms::delta_form(), M, dir, t.sieve).table;
    t.e11 = cache::load_or_build(forms::curve_11a(), M, dir, t.sieve).table;
    t.e37 = cache::load_or_build(forms::curve_37a(), M, dir, t.sieve).table;
  } else {
    t.delta = forms::delta_coefficients(M);
    t.e11 = forms::elliptic_coefficients(forms::curve_11a(), M, t.sieve);
    t.e37 = forms::elliptic_coefficients(forms::curve_37a(), M, t.sieve);
  }
  return t;
}

void Recorder::add(std::string name, bool pass, json detail, std::size_t weight) {
  CaseResult c{result_.suite, std::move(name), pass, std::move(detail)};
  result_.cases += weight;
  if (!pass) {
    ++result_.failures;
    if (!result_.first_failure) result_.first_failure = c;
  }
  if (jsonl_) {
    json line = {{"suite", c.suite}, {"case", c.name}, {"pass", c.pass}, {"detail", c.detail}};
    *jsonl_ << line.dump() << '\n';
  }
}

std::vector<std::int64_t> twist_parameters(const forms::Newform& form, int count, int omega) {
  std::vector<std::int64_t> out;
  for (std::int64_t m = 1; static_cast<int>(out.size()) < count; m += 2) {
    if (!arith::is_squarefree_trial(static_cast<std::uint64_t>(m)) || std::gcd(m, form.level) != 1) {
      continue;
    }
    for (std::int64_t d : {m, -m}) {
      if (static_cast<int>(out.size()) >= count) break;
      if (omega != 0 && lfun::omega(form, lfun::TwistCharacter(d)) != omega) continue;
      out.push_back(d);
    }
  }
  return out;
}

SuiteResult verify_gauss(const arith::SieveTables& sieve, std::ostream* jsonl, GaussFn fast,
                         std::int64_t n_max, std::int64_t k_max) {
  if (!fast) fast = gauss::gauss_fast;
  struct PerN {
    double max_err = 0.0;
    std::int64_t witness_k = 0;
    bool pass = true;
    std::string error;
  };
  const std::int64_t count = (n_max + 1) / 2;
  std::vector<PerN> results(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < count; ++i) {
    const std::int64_t n = 2 * i + 1;
    PerN& r = results[static_cast<std::size_t>(i)];
    try {
      const auto brute = gauss::gauss_brute_range(k_max, n);
      for (std::int64_t k = -k_max; k <= k_max; ++k) {
        const auto value = fast(k, n, sieve).value;
        const double err = std::abs(value - brute[static_cast<std::size_t>(k + k_max)]);
        if (err > r.max_err || !std::isfinite(err)) {
          r.max_err = err;
          r.witness_k = k;
        }
        if (!(err <= 1e-8 * static_cast<double>(n))) r.pass = false;
      }
    } catch (const std::exception& e) {
      r.pass = false;
      r.error = e.what();
    }
  }
  Recorder rec("gauss", jsonl);
  for (std::int64_t i = 0; i < count; ++i) {
    const std::int64_t n = 2 * i + 1;
    const PerN& r = results[static_cast<std::size_t>(i)];
    json detail = {{"n", n}, {"k_range", k_max}, {"max_err", r.max_err}, {"witness_k", r.witness_k}};
    if (!r.error.empty()) detail["error"] = r.error;
    rec.add("n=" + std::to_string(n), r.pass, detail, static_cast<std::size_t>(2 * k_max + 1));
  }
  return rec.result();
}

SuiteResult verify_poisson(const arith::SieveTables& sieve, std::ostream* jsonl, int count,
                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> pick_n(0, 499);
  std::uniform_real_distribution<double> pick_z(50.0, 500.0);
  const smooth::SmoothWeight J = smooth::make_bump_J();
  const smooth::SmoothWeight G = smooth::make_partition_G();
  smooth::TransformConfig cfg;
  cfg.tolerance = 1e-10;
  Recorder rec("poisson", jsonl);
  for (int i = 0; i < count; ++i) {
    const std::int64_t n = 2 * pick_n(rng) + 1;
    const double Z = pick_z(rng);
    const smooth::SmoothWeight& F = (i % 2 == 0) ? J : G;
    const std::string name = "n=" + std::to_string(n) + ",Z=" + std::to_string(Z) + "," + F.name();
    try {
      const auto r = gauss::poisson_verify(n, Z, F, cfg, sieve);
      const bool pass = r.abs_err <= 1e-8 * (1.0 + std::abs(r.lhs));
      rec.add(name, pass,
              {{"n", n}, {"Z", Z}, {"weight", r.weight}, {"lhs", r.lhs}, {"rhs", r.rhs},
               {"abs_err", r.abs_err}, {"k_used", r.k_used}});
    } catch (const Error& e) {
      rec.add(name, false, {{"n", n}, {"Z", Z}, {"error", e.what()}});
    }
  }
  return rec.result();
}

SuiteResult verify_kernels(std::ostream* jsonl) {
  Recorder rec("kernels", jsonl);
  for (int weight : {2, 12}) {
    const kernels::KernelSuite suite(weight);
    for (double x : {0.1, 1.0, 10.0}) {
      const std::string tag = "k=" + std::to_string(weight) + ",x=" + std::to_string(x);
      const double w1 = kernels::w1(suite, x);
      const double w1c = kernels::w1_contour(suite, x);
      rec.add("W1 contour " + tag, std::abs(w1 - w1c) <= 1e-8,
              {{"weight", weight}, {"x", x}, {"closed", w1}, {"contour", w1c}});
      const double w2 = kernels::w2(suite, x);
      const double w2c = kernels::w2_contour(suite, x);
      rec.add("W2 contour " + tag, std::abs(w2 - w2c) <= 1e-8,
              {{"weight", weight}, {"x", x}, {"closed", w2}, {"contour", w2c}});
      const double w2q = kernels::w2_quadrature(suite, x);
      rec.add("W2 quadrature " + tag, std::abs(w2 - w2q) <= 1e-8,
              {{"weight", weight}, {"x", x}, {"closed", w2}, {"quadrature", w2q}});
    }
    const double at_zero = kernels::w1(suite, 1e-12);
    rec.add("W1(0+) k=" + std::to_string(weight), std::abs(at_zero - 1.0) <= 1e-10,
            {{"weight", weight}, {"value", at_zero}});
  }
  return rec.result();
}

SuiteResult verify_afe(const Tables& tables, std::ostream* jsonl, int twists,
                       int derivative_twists) {
  Recorder rec("afe", jsonl);
  constexpr double tol = 1e-11;
  for (const auto* table : tables.all()) {
    const auto& form = table->form();
    for (std::int64_t d : twist_parameters(form, twists)) {
      const lfun::TwistCharacter chi(d);
      const std::string tag = form.label + ",d=" + std::to_string(d);
      try {
        const auto base = lfun::central_value(*table, chi, tol);
        if (base.omega == 1) {
          const double general = lfun::afe_general_s(*table, chi, 0.5, tol).real();
          rec.add("general-s " + tag, std::abs(base.value - general) <= 1e-8,
                  {{"d", d}, {"form", form.label}, {"afe", base.value}, {"general_s", general}});
        }
        for (double A : {0.5, 1.0, 2.0}) {
          const auto bal = lfun::central_value_balanced(*table, chi, A, tol);
          json detail = {{"d", d}, {"form", form.label}, {"A", A}, {"omega", bal.omega},
                         {"afe", base.value}, {"balanced", bal.value}, {"gross_mass", bal.gross_mass}};
          if (bal.omega == 1) {
            rec.add("balanced " + tag + ",A=" + std::to_string(A),
                    std::abs(bal.value - base.value) <= 1e-8, detail);
          } else {
            rec.add("vanishing " + tag + ",A=" + std::to_string(A),
                    std::abs(bal.value) <= 1e-7 * bal.gross_mass, detail);
          }
        }
      } catch (const Error& e) {
        rec.add("afe " + tag, false, {{"d", d}, {"form", form.label}, {"error", e.what()}});
      }
    }
  }
  for (std::int64_t d : twist_parameters(tables.e37.form(), derivative_twists, -1)) {
    const lfun::TwistCharacter chi(d);
    const std::string tag = "37a,d=" + std::to_string(d);
    try {
      const double value = lfun::central_derivative(tables.e37, chi, tol).value;
      const double oracle = lfun::derivative_oracle(tables.e37, chi);
      rec.add("derivative " + tag, std::abs(value - oracle) <= 1e-5 * std::abs(oracle),
              {{"d", d}, {"afe", value}, {"difference_quotient", oracle}});
    } catch (const Error& e) {
      rec.add("derivative " + tag, false, {{"d", d}, {"error", e.what()}});
    }
  }
  return rec.result();
}

namespace {

forms::CoefficientTable synthetic(const forms::CoefficientTable& source, std::int64_t level,
                                  int fricke, const std::string& label) {
  forms::Newform form;
  form.weight = 2;
  form.level = level;
  form.fricke = fricke;
  form.kind = forms::FormKind::Imported;
  form.label = label;
  return forms::CoefficientTable(form, std::vector<double>(source.values().begin(), source.values().end()));
}

}  // namespace

SuiteResult verify_euler(const Tables& tables, std::ostream* jsonl,
                         std::vector<std::uint64_t> cutoffs) {
  Recorder rec("euler", jsonl);
  const auto all = tables.all();

  for (const auto* f : all) {
    for (const auto* g : all) {
      if (f == g) continue;
      const std::string pair = f->form().label + "," + g->form().label;
      std::vector<euler::EulerConstantReport> reports;
      try {
        for (std::uint64_t P : cutoffs) reports.push_back(euler::constant_Cfg(*f, *g, P, tables.sieve));
      } catch (const Error& e) {
        rec.add("constant " + pair, false, {{"pair", pair}, {"error", e.what()}});
        continue;
      }
      for (const auto& r : reports) {
        if (r.prime_cutoff > 10000) continue;
        rec.add("factorization " + pair + ",P=" + std::to_string(r.prime_cutoff),
                r.factorization_residual <= 1e-12,
                {{"pair", pair}, {"P", r.prime_cutoff}, {"residual", r.factorization_residual}});
        const double scale = std::max(std::abs(r.bracket), std::abs(r.E[0].value));
        rec.add("bracket " + pair + ",P=" + std::to_string(r.prime_cutoff),
                std::abs(r.bracket - r.bracket_factorized) <= 1e-12 * scale,
                {{"pair", pair}, {"direct", r.bracket}, {"factorized", r.bracket_factorized}});
        bool z_bounded = true;
        for (double z : r.Z) z_bounded = z_bounded && std::abs(z) >= 1e-3 && std::abs(z) <= 1e3;
        rec.add("Z bounded " + pair + ",P=" + std::to_string(r.prime_cutoff), z_bounded,
                {{"pair", pair}, {"Z", r.Z}});
      }
      for (std::size_t i = 0; i < 4; ++i) {
        const auto& q = reports[0].q_primes;
        if (std::find(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(i), q[i]) != q.begin() + static_cast<std::ptrdiff_t>(i)) continue;
        json deltas = json::array();
        bool decreasing = true;
        for (std::size_t j = 0; j < reports.size(); ++j) {
          deltas.push_back(reports[j].E[i].delta);
          if (j > 0 && !(reports[j].E[i].delta < reports[j - 1].E[i].delta)) decreasing = false;
        }
        rec.add("stabilization " + pair + ",Q'=" + std::to_string(reports[0].q_primes[i]),
                decreasing, {{"pair", pair}, {"cutoffs", cutoffs}, {"deltas", deltas}});
      }
    }
  }

  // local factors coded twice, every Q', all primes below 2000
  for (const auto* f : all) {
    for (const auto* g : all) {
      if (f == g) continue;
      const std::int64_t q1 = f->form().level, q2 = g->form().level;
      double worst = 0.0;
      std::uint64_t witness = 0;
      for (std::int64_t qp : {std::int64_t{1}, q1, q2, q1 * q2}) {
        for (std::uint32_t p : tables.sieve.primes()) {
          if (p > 2000) break;
          if (p == 2) continue;
          const double a = euler::euler_local_factor(p, f->form(), (*f)[p], g->form(), (*g)[p], qp);
          const double b = euler::euler_local_factor_split(p, f->form(), (*f)[p], g->form(), (*g)[p], qp);
          const double err = std::abs(a - b) / std::abs(a);
          if (err > worst) {
            worst = err;
            witness = p;
          }
        }
      }
      rec.add("local factor codings " + f->form().label + "," + g->form().label, worst <= 1e-13,
              {{"max_rel_diff", worst}, {"witness_p", witness}});
    }
  }
  {
    const double p = 101.0, x = 1.0 / p;
    const forms::Newform zf = tables.delta.form();
    const forms::Newform zg = tables.e37.form();
    const double value = euler::euler_local_factor(101, zf, 0.0, zg, 0.0, 1);
    const double expected = 1.0 + p / (p + 1.0) * (1.0 / ((1.0 + x) * (1.0 + x)) - 1.0);
    rec.add("local factor at zero eigenvalues", std::abs(value - expected) <= 1e-15,
            {{"value", value}, {"expected", expected}});
  }

  // Sym² local factor, Satake form against the λ(p^{2k}) series
  {
    double worst = 0.0;
    for (const auto* f : all) {
      for (std::uint32_t p : tables.sieve.primes()) {
        if (p > 1000) break;
        const bool bad = f->form().level % p == 0;
        const double X = 1.0 / p;
        const double a = euler::sym2_local((*f)[p], bad, X);
        const double b = euler::sym2_local_series((*f)[p], bad, X);
        worst = std::max(worst, std::abs(a - b) / a);
      }
    }
    const double X0 = 1.0 / 7.0;
    const double at_zero = euler::sym2_local(0.0, false, X0);
    const double at_zero_series = euler::sym2_local_series(0.0, false, X0);
    rec.add("sym2 two ways", worst <= 1e-13, {{"max_rel_diff", worst}});
    rec.add("sym2 at zero eigenvalue",
            std::abs(at_zero - at_zero_series) <= 1e-14 &&
                std::abs(at_zero - 1.0 / ((1.0 - X0) * (1.0 + X0) * (1.0 + X0))) <= 1e-14,
            {{"satake", at_zero}, {"series", at_zero_series}});
  }

  // degenerate sign on a square level forces the bracket to vanish
  {
    const std::uint64_t P = 10000;
    const auto square_f = synthetic(tables.e11, 9, 1, "sq9");    // i^2 η = -1
    const auto square_g = synthetic(tables.e11, 25, -1, "sq25");  // i^2 η = +1
    struct Case {
      const forms::CoefficientTable* f;
      const forms::CoefficientTable* g;
      const char* name;
    };
    for (const Case& c : {Case{&square_f, &tables.e37, "f square, s_f = -1"},
                          Case{&tables.delta, &square_g, "g square, s_g = +1"}}) {
      const auto r = euler::constant_Cfg(*c.f, *c.g, P, tables.sieve);
      const double scale = std::abs(r.E[0].value);
      rec.add(std::string("vanishing ") + c.name,
              std::abs(r.bracket_factorized) <= 1e-14 * scale && std::abs(r.bracket) <= 1e-12 * scale,
              {{"sign_pattern", {r.s_f, r.s_g}}, {"bracket", r.bracket},
               {"bracket_factorized", r.bracket_factorized}, {"E1", r.E[0].value}});
    }
    for (const auto* f : all) {
      for (const auto* g : all) {
        if (f == g) continue;
        const auto r = euler::constant_Cfg(*f, *g, P, tables.sieve);
        // level 1 with s_g = +1 admits no twists of odd sign
        if (g->form().level == 1) {
          rec.add("vanishing " + f->form().label + "," + g->form().label,
                  std::abs(r.bracket) <= 1e-12 * std::abs(r.E[0].value),
                  {{"bracket", r.bracket}, {"C_fg", r.C_fg}});
          continue;
        }
        rec.add("nonvanishing " + f->form().label + "," + g->form().label,
                std::abs(r.bracket) > 1e-6 * std::abs(r.E[0].value),
                {{"bracket", r.bracket}, {"C_fg", r.C_fg}});
      }
    }
  }
  return rec.result();
}

}  // namespace twmo::verify
