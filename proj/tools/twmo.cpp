#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "twmo/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Twisted L-values, Gauss sums and the mixed first moment"};
  app.require_subcommand(1);
  twmo::commands::Options opts;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "Config file (key = value, [form.f]/[form.g] sections)");
    sub->add_option("--x", opts.x, "X grid, comma-separated");
    sub->add_option("--d", opts.d, "Twist parameter (odd, squarefree)");
    sub->add_option("--form", opts.form, "f, g, or a built-in label (delta, 11a, 37a)");
    sub->add_option("--suite", opts.suite, "gauss, poisson, kernels, afe or euler");
    sub->add_option("--threads", opts.threads, "Worker threads");
    sub->add_option("--out", opts.out, "Output directory");
    sub->add_option("--cache", opts.cache, "Coefficient cache directory");
    sub->add_option("--tol", opts.tol, "Absolute tolerance per L-value");
    sub->add_option("--primes", opts.primes, "Euler product prime cutoff P");
    sub->add_option("--f", opts.f, "Built-in form f (delta, 11a, 37a)");
    sub->add_option("--g", opts.g, "Built-in form g (delta, 11a, 37a)");
    sub->add_option("--y-split", opts.y_split, "Decomposition split points as multiples of X");
  };

  const std::pair<const char*, const char*> subcommands[] = {
      {"lvalue", "Central value L(1/2, f x chi_8d)"},
      {"deriv", "Central derivative L'(1/2, g x chi_8d)"},
      {"verify", "Run a property suite and write JSONL case results"},
      {"moment", "Mixed moment over the X grid: CSV records and JSON summaries"},
      {"constant", "Euler-product constant report"},
      {"fricke", "Fricke sign from theta-series probes"},
      {"cache-build", "Build coefficient tables into the cache"},
  };
  for (const auto& [name, help] : subcommands) add_common(app.add_subcommand(name, help));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  return twmo::commands::run(name, opts, std::cout, std::cerr);
}
