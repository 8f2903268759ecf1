#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "twmo/config.hpp"

namespace twmo::commands {

/// Command-line overrides; unset fields fall back to the config file, then to defaults.
struct Options {
  std::optional<std::string> config_path;
  std::optional<std::string> x;        // comma-separated X grid
  std::optional<std::int64_t> d;
  std::optional<std::string> form;     // "f", "g" or a built-in label
  std::optional<std::string> suite;
  std::optional<int> threads;
  std::optional<std::string> out;
  std::optional<std::string> cache;
  std::optional<double> tol;
  std::optional<std::uint64_t> primes;
  std::optional<std::string> y_split;  // comma-separated
  std::optional<std::string> f;        // built-in label replacing form f
  std::optional<std::string> g;        // built-in label replacing form g
};

/// Config file (if any) with the flag overrides applied and validated.
config::RunConfig effective_config(const Options& opts);

// Each command returns the process exit code: 0 ok, 1 usage or verification failure,
// 2 domain error, 3 resource shortfall. JSON goes to `out`, diagnostics to `err`.
int cmd_lvalue(const Options& opts, std::ostream& out, std::ostream& err);
int cmd_deriv(const Options& opts, std::ostream& out, std::ostream& err);
int cmd_verify(const Options& opts, std::ostream& out, std::ostream& err);
int cmd_moment(const Options& opts, std::ostream& out, std::ostream& err);
int cmd_constant(const Options& opts, std::ostream& out, std::ostream& err);
int cmd_fricke(const Options& opts, std::ostream& out, std::ostream& err);
int cmd_cache_build(const Options& opts, std::ostream& out, std::ostream& err);

/// Dispatches by subcommand name and maps exceptions to exit codes.
int run(const std::string& subcommand, const Options& opts, std::ostream& out, std::ostream& err);

}  // namespace twmo::commands
