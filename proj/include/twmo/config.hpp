#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "twmo/forms.hpp"

namespace twmo::config {

/// How a form is obtained: a built-in label, the η-product Δ, an elliptic curve given by its
/// Weierstrass model and conductor, or an imported coefficient file.
struct FormSpec {
  std::string kind = "builtin";  // builtin | delta | elliptic-curve | import
  std::string label;
  std::optional<forms::CurveCoefficients> coeffs;
  std::optional<std::int64_t> level;
  std::optional<int> fricke;
  std::string path;  // import only
};

struct RunConfig {
  FormSpec f{"builtin", "delta", {}, {}, {}, {}};
  FormSpec g{"builtin", "37a", {}, {}, {}, {}};
  std::vector<double> x_grid{1024.0, 2048.0, 4096.0};
  std::string weight_function = "J";
  std::optional<double> tol;
  std::uint64_t primes = 10000;
  std::vector<double> y_split;
  std::optional<std::string> cache_dir;
  std::string out_dir = ".";
  int threads = 1;
};

/// Parses `key = value` lines; `[form.f]` and `[form.g]` open per-form sections; `#` starts a comment.
/// Throws UsageError naming the line on any unknown key or malformed value.
RunConfig parse(std::istream& in);
RunConfig load(const std::filesystem::path& path);

/// X grid strictly increasing and >= 16, tolerances positive, threads >= 1, P >= 3.
void validate(const RunConfig& cfg);

std::vector<double> parse_list(const std::string& text);

struct ResolvedForm {
  forms::Newform form;
  std::optional<forms::CoefficientTable> imported;
};

/// Turns a spec into a Newform. A missing Fricke sign is determined numerically from the
/// coefficients. Imported tables are read and checked here.
ResolvedForm resolve(const FormSpec& spec);

FormSpec builtin_spec(const std::string& label);

}  // namespace twmo::config
