#include "twmo/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>

#include <json.hpp>
#include <omp.h>

#include "twmo/cache.hpp"
#include "twmo/error.hpp"
#include "twmo/euler.hpp"
#include "twmo/kernels.hpp"
#include "twmo/lfun.hpp"
#include "twmo/moment.hpp"
#include "twmo/report.hpp"
#include "twmo/smooth.hpp"
#include "twmo/verify.hpp"

namespace twmo::commands {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Obtained {
  forms::CoefficientTable table;
  bool cache_hit = false;
};

Obtained obtain(const config::ResolvedForm& rf, std::size_t M, const std::filesystem::path& dir,
                const arith::SieveTables& sieve) {
  if (rf.imported) {
    if (rf.imported->length() < M) {
      throw ResourceError("imported table for " + rf.form.label + " has length " +
                          std::to_string(rf.imported->length()) + ", need " + std::to_string(M));
    }
    return {rf.imported->prefix(M), true};
  }
  auto loaded = cache::load_or_build(rf.form, M, dir, sieve);
  return {std::move(loaded.table), loaded.cache_hit};
}

arith::SieveTables sieve_for(std::size_t M) {
  return arith::SieveTables::build(static_cast<std::uint32_t>(std::max<std::size_t>(M, 1024)) + 1);
}

config::FormSpec select_form(const config::RunConfig& cfg, const Options& opts,
                             const std::string& fallback) {
  const std::string which = opts.form.value_or(fallback);
  if (which == "f") return cfg.f;
  if (which == "g") return cfg.g;
  return config::builtin_spec(which);
}

std::int64_t require_d(const Options& opts) {
  if (!opts.d) throw UsageError("--d is required");
  return *opts.d;
}

struct Twisted {
  config::ResolvedForm rf;
  lfun::TwistCharacter chi;
  forms::CoefficientTable table;
};

Twisted prepare_twist(const Options& opts, const std::string& fallback, double tol) {
  const auto cfg = effective_config(opts);
  config::ResolvedForm rf = config::resolve(select_form(cfg, opts, fallback));
  lfun::TwistCharacter chi(require_d(opts));
  lfun::omega(rf.form, chi);  // ramified twists fail before any table work
  const kernels::KernelSuite suite(rf.form.weight);
  const std::size_t M = kernels::truncation_length(suite, lfun::afe_scale(rf.form, chi), 0.5 * tol);
  const auto sieve = sieve_for(M);
  auto table = obtain(rf, M, cache::resolve_dir(cfg.cache_dir), sieve).table;
  return {std::move(rf), std::move(chi), std::move(table)};
}

}  // namespace

config::RunConfig effective_config(const Options& opts) {
  config::RunConfig cfg = opts.config_path ? config::load(*opts.config_path) : config::RunConfig{};
  if (opts.x) cfg.x_grid = config::parse_list(*opts.x);
  if (opts.threads) cfg.threads = *opts.threads;
  if (opts.out) cfg.out_dir = *opts.out;
  if (opts.cache) cfg.cache_dir = *opts.cache;
  if (opts.tol) cfg.tol = *opts.tol;
  if (opts.primes) cfg.primes = *opts.primes;
  if (opts.y_split) cfg.y_split = config::parse_list(*opts.y_split);
  if (opts.f) cfg.f = config::builtin_spec(*opts.f);
  if (opts.g) cfg.g = config::builtin_spec(*opts.g);
  config::validate(cfg);
  return cfg;
}

int cmd_lvalue(const Options& opts, std::ostream& out, std::ostream&) {
  const double tol = effective_config(opts).tol.value_or(1e-8);
  const auto tw = prepare_twist(opts, "f", tol);
  const auto value = lfun::central_value(tw.table, tw.chi, tol);
  json j = report::to_json(value);
  j["form"] = tw.rf.form.label;
  j["d"] = tw.chi.d();
  if (value.omega == -1) {
    const auto bal = lfun::central_value_balanced(tw.table, tw.chi, 1.0, tol);
    j["balanced_residual"] = bal.value;
    j["balanced_gross_mass"] = bal.gross_mass;
  }
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_deriv(const Options& opts, std::ostream& out, std::ostream&) {
  const double tol = effective_config(opts).tol.value_or(1e-8);
  const auto tw = prepare_twist(opts, "g", tol);
  const auto value = lfun::central_derivative(tw.table, tw.chi, tol);
  json j = report::to_json(value);
  j["form"] = tw.rf.form.label;
  j["d"] = tw.chi.d();
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_verify(const Options& opts, std::ostream& out, std::ostream& err) {
  const auto cfg = effective_config(opts);
  if (!opts.suite) throw UsageError("--suite is required (gauss, poisson, kernels, afe, euler)");
  const std::string& suite = *opts.suite;
  omp_set_num_threads(cfg.threads);
  const auto path = std::filesystem::path(cfg.out_dir) / ("verify_" + suite + ".jsonl");
  std::filesystem::create_directories(cfg.out_dir);
  std::ofstream jsonl(path, std::ios::trunc);
  if (!jsonl) throw ResourceError("cannot write " + path.string());
  const std::string cache_dir = cache::resolve_dir(cfg.cache_dir).string();

  verify::SuiteResult result;
  if (suite == "gauss") {
    result = verify::verify_gauss(sieve_for(4096), &jsonl);
  } else if (suite == "poisson") {
    result = verify::verify_poisson(sieve_for(4096), &jsonl);
  } else if (suite == "kernels") {
    result = verify::verify_kernels(&jsonl);
  } else if (suite == "afe") {
    result = verify::verify_afe(verify::build_tables(100000, cache_dir), &jsonl);
  } else if (suite == "euler") {
    result = verify::verify_euler(verify::build_tables(100000, cache_dir), &jsonl);
  } else {
    throw UsageError("unknown suite '" + suite + "'");
  }
  json summary = {{"suite", result.suite},
                  {"cases", result.cases},
                  {"failures", result.failures},
                  {"jsonl", path.string()}};
  if (result.first_failure) {
    summary["first_failure"] = {{"case", result.first_failure->name},
                                {"detail", result.first_failure->detail}};
  }
  out << summary.dump() << '\n';
  if (!result.passed()) {
    err << "verification failed";
    if (result.first_failure) err << ": " << result.first_failure->name;
    err << '\n';
    return 1;
  }
  return 0;
}

int cmd_moment(const Options& opts, std::ostream& out, std::ostream& err) {
  const auto t_start = Clock::now();
  const auto cfg = effective_config(opts);
  const double tol = cfg.tol.value_or(1e-6);
  omp_set_num_threads(cfg.threads);
  const auto J = smooth::make_weight(cfg.weight_function);
  const auto rf = config::resolve(cfg.f);
  const auto rg = config::resolve(cfg.g);

  std::size_t Mf = cfg.primes, Mg = cfg.primes;
  for (double X : cfg.x_grid) {
    std::vector<double> ys;
    for (double y : cfg.y_split) ys.push_back(y * X);
    Mf = std::max(Mf, moment::required_length(rf.form, X, J, tol, ys));
    Mg = std::max(Mg, moment::required_length(rg.form, X, J, tol, ys));
  }
  const auto dir = cache::resolve_dir(cfg.cache_dir);
  const auto t_tables = Clock::now();
  const auto sieve = sieve_for(std::max(Mf, Mg));
  const auto f = obtain(rf, Mf, dir, sieve);
  const auto g = obtain(rg, Mg, dir, sieve);
  const double tables_seconds = seconds_since(t_tables);

  const auto t_constant = Clock::now();
  const auto constant = euler::constant_Cfg(f.table, g.table, cfg.primes, sieve);
  const double constant_seconds = seconds_since(t_constant);

  json timing_runs = json::array();
  json outputs = json::array();
  for (double X : cfg.x_grid) {
    const auto t_run = Clock::now();
    auto run = moment::run_moment(f.table, g.table, X, J, tol);
    moment::attach_prediction(run, constant.C_fg);
    for (double y : cfg.y_split) run.decompositions.push_back(moment::decompose_I(run, f.table, g.table, y * X));
    if (run.records.empty()) {
      err << "warning: empty family at X = " << report::format_double(X)
          << "; S_J = 0 and the prediction comparison is suppressed\n";
    }
    json summary = report::summary_json(run);
    summary["constant"] = {{"prime_cutoff", constant.prime_cutoff},
                           {"C_fg", constant.C_fg},
                           {"stabilization", constant.stabilization}};
    const auto csv = report::csv_path(cfg.out_dir, X);
    const auto js = report::json_path(cfg.out_dir, X);
    report::write_text(csv, report::records_csv(run.records));
    report::write_text(js, summary.dump(2) + "\n");
    outputs.push_back(csv.string());
    outputs.push_back(js.string());
    timing_runs.push_back({{"X", X}, {"seconds", seconds_since(t_run)}});
    out << "X=" << report::format_double(X) << " records=" << run.records.size()
        << " S_J=" << report::format_double(run.S_J);
    if (run.has_prediction) out << " ratio=" << report::format_double(run.ratio);
    out << '\n';
  }
  json log = {{"threads", cfg.threads},
              {"cache", {{"dir", dir.string()}, {"f_hit", f.cache_hit}, {"g_hit", g.cache_hit}}},
              {"table_lengths", {Mf, Mg}},
              {"timing_seconds",
               {{"tables", tables_seconds},
                {"constant", constant_seconds},
                {"runs", timing_runs},
                {"total", seconds_since(t_start)}}},
              {"outputs", outputs}};
  report::write_text(std::filesystem::path(cfg.out_dir) / "run_log.json", log.dump(2) + "\n");
  return 0;
}

int cmd_constant(const Options& opts, std::ostream& out, std::ostream&) {
  const auto cfg = effective_config(opts);
  omp_set_num_threads(cfg.threads);
  const auto rf = config::resolve(cfg.f);
  const auto rg = config::resolve(cfg.g);
  if (rf.form.label == rg.form.label && rf.form.level == rg.form.level &&
      rf.form.weight == rg.form.weight) {
    throw DomainError("f = g (" + rf.form.label +
                      "): L(1+u+w, f⊗f) has a pole at the origin, the constant is undefined");
  }
  const std::size_t P = cfg.primes;
  const auto sieve = sieve_for(P);
  const auto dir = cache::resolve_dir(cfg.cache_dir);
  const auto f = obtain(rf, P, dir, sieve);
  const auto g = obtain(rg, P, dir, sieve);
  json j = report::to_json(euler::constant_Cfg(f.table, g.table, P, sieve));
  j["f"] = rf.form.label;
  j["g"] = rg.form.label;
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_fricke(const Options& opts, std::ostream& out, std::ostream&) {
  const auto cfg = effective_config(opts);
  const auto rf = config::resolve(select_form(cfg, opts, "f"));
  const std::vector<double> probes{1.1, 1.2, 1.5, 2.0};
  const auto M = static_cast<std::size_t>(
      64.0 * std::sqrt(static_cast<double>(rf.form.level)) * 2.0 + 40.0 * rf.form.weight + 1000.0);
  const auto sieve = sieve_for(M);
  const auto table = obtain(rf, M, cache::resolve_dir(cfg.cache_dir), sieve).table;
  json list = json::array();
  for (double t : probes) {
    const auto p = forms::fricke_probe(table, t);
    list.push_back({{"t", t},
                    {"F_t", p.at_t.value},
                    {"F_inv_t", p.at_inv.value},
                    {"ratio", p.ratio},
                    {"determinate", p.determinate}});
  }
  json j = {{"form", rf.form.label},
            {"weight", rf.form.weight},
            {"level", rf.form.level},
            {"fricke", forms::determine_fricke_sign(table, 1.1)},
            {"configured_fricke", rf.form.fricke},
            {"probes", list}};
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_cache_build(const Options& opts, std::ostream& out, std::ostream&) {
  const auto cfg = effective_config(opts);
  omp_set_num_threads(cfg.threads);
  const double tol = cfg.tol.value_or(1e-6);
  const auto J = smooth::make_weight(cfg.weight_function);
  std::vector<config::FormSpec> specs;
  if (opts.form) {
    specs.push_back(select_form(cfg, opts, "f"));
  } else {
    specs = {cfg.f, cfg.g};
  }
  for (const auto& spec : specs) {
    const auto rf = config::resolve(spec);
    std::size_t M = cfg.primes;
    for (double X : cfg.x_grid) {
      std::vector<double> ys;
      for (double y : cfg.y_split) ys.push_back(y * X);
      M = std::max(M, moment::required_length(rf.form, X, J, tol, ys));
    }
    const auto dir = cache::resolve_dir(cfg.cache_dir);
    const auto sieve = sieve_for(M);
    const auto got = obtain(rf, M, dir, sieve);
    out << json({{"form", rf.form.label},
                 {"length", got.table.length()},
                 {"path", cache::table_path(dir, rf.form).string()},
                 {"cache_hit", got.cache_hit}})
               .dump()
        << '\n';
  }
  return 0;
}

int run(const std::string& subcommand, const Options& opts, std::ostream& out, std::ostream& err) {
  try {
    if (subcommand == "lvalue") return cmd_lvalue(opts, out, err);
    if (subcommand == "deriv") return cmd_deriv(opts, out, err);
    if (subcommand == "verify") return cmd_verify(opts, out, err);
    if (subcommand == "moment") return cmd_moment(opts, out, err);
    if (subcommand == "constant") return cmd_constant(opts, out, err);
    if (subcommand == "fricke") return cmd_fricke(opts, out, err);
    if (subcommand == "cache-build") return cmd_cache_build(opts, out, err);
    throw UsageError("unknown subcommand '" + subcommand + "'");
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace twmo::commands
