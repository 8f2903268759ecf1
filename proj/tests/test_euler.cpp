#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "twmo/error.hpp"
#include "twmo/euler.hpp"
#include "twmo/verify.hpp"

using namespace twmo;

namespace {

const verify::Tables& tables() {
  static const verify::Tables t = verify::build_tables(20000);
  return t;
}

}  // namespace

TEST_CASE("local factor with zero eigenvalues") {
  const auto f = forms::delta_form();
  const auto g = forms::curve_37a();
  for (std::uint64_t p : {3u, 5u, 101u, 997u}) {
    const double x = 1.0 / static_cast<double>(p);
    const double expected = 1.0 + p / (p + 1.0) * (1.0 / ((1.0 + x) * (1.0 + x)) - 1.0);
    CHECK(euler::euler_local_factor(p, f, 0.0, g, 0.0, 1) == doctest::Approx(expected).epsilon(1e-15));
  }
}

TEST_CASE("level prime: even ν adds the halves, odd ν subtracts") {
  const auto& t = tables();
  const auto& f = t.e11.form();
  const auto& g = t.e37.form();
  const double lf = t.e11[11], lg = t.e37[11];
  const double x = 1.0 / std::sqrt(11.0);
  const double minus = 1.0 / ((1.0 - lf * x) * (1.0 - lg * x + 1.0 / 11.0));
  const double plus = 1.0 / ((1.0 + lf * x) * (1.0 + lg * x + 1.0 / 11.0));
  const double w = 11.0 / 12.0;
  CHECK(euler::euler_local_factor(11, f, lf, g, lg, 1) == doctest::Approx(w * 0.5 * (minus + plus)).epsilon(1e-14));
  CHECK(euler::euler_local_factor(11, f, lf, g, lg, 121) == doctest::Approx(w * 0.5 * (minus + plus)).epsilon(1e-14));
  CHECK(euler::euler_local_factor(11, f, lf, g, lg, 11) == doctest::Approx(w * 0.5 * (minus - plus)).epsilon(1e-14));
  CHECK(euler::euler_local_factor_split(11, f, lf, g, lg, 11) ==
        doctest::Approx(euler::euler_local_factor(11, f, lf, g, lg, 11)).epsilon(1e-14));
}

TEST_CASE("degenerate local factor is an error") {
  const auto f = forms::delta_form();
  const auto g = forms::curve_37a();
  // 1 - λ p^{-1/2} + p^{-1} = 0 at λ = (p + 1)/√p
  const double lambda = 4.0 / std::sqrt(3.0);
  CHECK_THROWS_AS(euler::euler_local_factor(3, f, lambda, g, 0.0, 1), DomainError);
}

TEST_CASE("factorization identity at every truncation") {
  const auto& t = tables();
  for (std::uint64_t P : {50u, 500u, 5000u, 20000u}) {
    const auto r = euler::constant_Cfg(t.e11, t.e37, P, t.sieve);
    CHECK(r.factorization_residual < 1e-13);
    CHECK(std::abs(r.bracket - r.bracket_factorized) < 1e-13 * std::abs(r.E[0].value));
  }
}

TEST_CASE("swapping f and g changes the constant") {
  const auto& t = tables();
  const auto a = euler::constant_Cfg(t.delta, t.e11, 10000, t.sieve);
  const auto b = euler::constant_Cfg(t.e11, t.delta, 10000, t.sieve);
  CHECK(a.C_fg != 0.0);
  CHECK(std::abs(a.C_fg - b.C_fg) > 1e-6);
  CHECK(a.s_f == 1);
  CHECK(a.s_g == 1);  // i^2 · (-1)
}

TEST_CASE("f = g is refused") {
  const auto& t = tables();
  CHECK_THROWS_AS(euler::constant_Cfg(t.e11, t.e11, 1000, t.sieve), DomainError);
  CHECK_THROWS_AS(euler::E_at_origin(t.delta, t.delta, 1, 1000, t.sieve), DomainError);
}

TEST_CASE("edge L-values") {
  const auto& t = tables();
  const auto edge = euler::edge_L_values(t.delta, t.e37, 10000, t.sieve);
  CHECK(edge.sym2_f.value > 0.0);
  CHECK(edge.sym2_g.value > 0.0);
  CHECK(edge.rankin_selberg.value > 0.0);
  // Rankin–Selberg factor against the product over Satake pairs
  for (double a : {0.0, 0.7, -1.3}) {
    for (double b : {0.2, -1.9}) {
      const std::complex<double> al = std::polar(1.0, std::acos(a / 2.0));
      const std::complex<double> be = std::polar(1.0, std::acos(b / 2.0));
      const double X = 0.2;
      std::complex<double> prod = 1.0;
      for (auto u : {al, std::conj(al)}) {
        for (auto v : {be, std::conj(be)}) prod *= 1.0 - u * v * X;
      }
      CHECK(euler::rankin_selberg_local(a, false, b, false, X) == doctest::Approx(1.0 / prod.real()).epsilon(1e-13));
    }
  }
  CHECK(euler::rankin_selberg_local(0.5, true, -0.3, true, 0.1) == doctest::Approx(1.0 / (1.0 + 0.015)));
}

TEST_CASE("verify suite structural cases on small cutoffs") {
  std::ostringstream lines;
  const auto r = verify::verify_euler(tables(), &lines, {1000, 4000});
  CHECK(r.cases > 0);
  std::istringstream in(lines.str());
  std::size_t structural = 0;
  for (std::string line; std::getline(in, line);) {
    const auto j = nlohmann::json::parse(line);
    if (j["case"].get<std::string>().rfind("stabilization", 0) == 0) continue;
    ++structural;
    CHECK_MESSAGE(j["pass"].get<bool>(), line);
  }
  CHECK(structural > 20);
}
