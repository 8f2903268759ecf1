#include <benchmark/benchmark.h>

#include "twmo/arith.hpp"
#include "twmo/forms.hpp"
#include "twmo/moment.hpp"
#include "twmo/smooth.hpp"

namespace {

using twmo::Exec;

Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::Parallel : Exec::Serial; }

void BM_RamanujanTau(benchmark::State& state) {
  const auto M = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(twmo::forms::ramanujan_tau(M, exec_of(state)));
}
BENCHMARK(BM_RamanujanTau)->Args({50000, 0})->Args({50000, 1})->Unit(benchmark::kMillisecond);

void BM_EllipticPrimes(benchmark::State& state) {
  const auto M = static_cast<std::size_t>(state.range(0));
  const auto sieve = twmo::arith::SieveTables::build(static_cast<std::uint32_t>(M) + 1);
  const auto curve = twmo::forms::curve_37a();
  for (auto _ : state) {
    benchmark::DoNotOptimize(twmo::forms::elliptic_prime_values(curve, M, sieve, exec_of(state)));
  }
}
BENCHMARK(BM_EllipticPrimes)->Args({50000, 0})->Args({50000, 1})->Unit(benchmark::kMillisecond);

void BM_Moment(benchmark::State& state) {
  const double X = static_cast<double>(state.range(0));
  const auto J = twmo::smooth::make_bump_J();
  const auto f = twmo::forms::delta_form();
  const auto g = twmo::forms::curve_37a();
  const auto Mf = twmo::moment::required_length(f, X, J, 1e-6);
  const auto Mg = twmo::moment::required_length(g, X, J, 1e-6);
  const auto sieve = twmo::arith::SieveTables::build(static_cast<std::uint32_t>(Mg) + 1);
  const auto tf = twmo::forms::delta_coefficients(Mf);
  const auto tg = twmo::forms::elliptic_coefficients(g, Mg, sieve);
  for (auto _ : state) {
    benchmark::DoNotOptimize(twmo::moment::run_moment(tf, tg, X, J, 1e-6, exec_of(state)));
  }
}
BENCHMARK(BM_Moment)->Args({1024, 0})->Args({1024, 1})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
