#include "twmo/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "twmo/cache.hpp"
#include "twmo/error.hpp"

namespace twmo::config {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& where) {
  double v = 0.0;
  const auto t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw UsageError(where + ": expected a number, got '" + t + "'");
  }
  return v;
}

std::int64_t parse_int(const std::string& text, const std::string& where) {
  std::int64_t v = 0;
  const auto t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw UsageError(where + ": expected an integer, got '" + t + "'");
  }
  return v;
}

void set_form_key(FormSpec& spec, const std::string& key, const std::string& value,
                  const std::string& where) {
  if (key == "kind") {
    if (value != "builtin" && value != "delta" && value != "elliptic-curve" && value != "import") {
      throw UsageError(where + ": unknown form kind '" + value + "'");
    }
    spec.kind = value;
  } else if (key == "label") {
    spec.label = value;
  } else if (key == "coeffs") {
    std::vector<std::int64_t> a;
    std::stringstream ss(value);
    for (std::string item; std::getline(ss, item, ',');) a.push_back(parse_int(item, where));
    if (a.size() != 5) throw UsageError(where + ": coeffs needs a1, a2, a3, a4, a6");
    spec.coeffs = forms::CurveCoefficients{a[0], a[1], a[2], a[3], a[4]};
  } else if (key == "level") {
    spec.level = parse_int(value, where);
  } else if (key == "fricke") {
    spec.fricke = static_cast<int>(parse_int(value, where));
  } else if (key == "path") {
    spec.path = value;
  } else {
    throw UsageError(where + ": unknown form key '" + key + "'");
  }
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!trim(item).empty()) out.push_back(parse_double(item, "list '" + text + "'"));
  }
  return out;
}

RunConfig parse(std::istream& in) {
  RunConfig cfg;
  FormSpec* section = nullptr;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    const std::string where = "config line " + std::to_string(lineno);
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line == "[form.f]") {
        section = &cfg.f;
      } else if (line == "[form.g]") {
        section = &cfg.g;
      } else {
        throw UsageError(where + ": unknown section " + line);
      }
      *section = FormSpec{};
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section) {
      set_form_key(*section, key, value, where);
      continue;
    }
    if (key == "x") {
      cfg.x_grid = parse_list(value);
    } else if (key == "weight_function") {
      cfg.weight_function = value;
    } else if (key == "tol") {
      cfg.tol = parse_double(value, where);
    } else if (key == "primes") {
      cfg.primes = static_cast<std::uint64_t>(parse_int(value, where));
    } else if (key == "y_split") {
      cfg.y_split = parse_list(value);
    } else if (key == "threads") {
      cfg.threads = static_cast<int>(parse_int(value, where));
    } else if (key == "out") {
      cfg.out_dir = value;
    } else if (key == "cache") {
      cfg.cache_dir = value;
    } else {
      throw UsageError(where + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

RunConfig load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  return parse(in);
}

void validate(const RunConfig& cfg) {
  if (cfg.x_grid.empty()) throw UsageError("X grid is empty");
  for (std::size_t i = 0; i < cfg.x_grid.size(); ++i) {
    if (!(cfg.x_grid[i] >= 16.0)) throw UsageError("every X must be at least 16");
    if (i > 0 && !(cfg.x_grid[i] > cfg.x_grid[i - 1])) {
      throw UsageError("X grid must be strictly increasing");
    }
  }
  if (cfg.tol && !(*cfg.tol > 0.0)) throw UsageError("tolerance must be positive");
  if (cfg.threads < 1) throw UsageError("thread count must be at least 1");
  if (cfg.primes < 3) throw UsageError("prime cutoff must be at least 3");
  for (double y : cfg.y_split) {
    if (!(y > 0.0)) throw UsageError("split parameters must be positive");
  }
}

FormSpec builtin_spec(const std::string& label) {
  FormSpec spec;
  spec.kind = "builtin";
  spec.label = label;
  return spec;
}

ResolvedForm resolve(const FormSpec& spec) {
  ResolvedForm out;
  if (spec.kind == "builtin") {
    if (spec.label.empty()) throw UsageError("builtin form needs a label");
    out.form = forms::builtin_form(spec.label);
  } else if (spec.kind == "delta") {
    out.form = forms::delta_form();
  } else if (spec.kind == "elliptic-curve") {
    if (!spec.coeffs || !spec.level) {
      throw UsageError("elliptic-curve form needs coeffs and level");
    }
    out.form.weight = 2;
    out.form.level = *spec.level;
    out.form.kind = forms::FormKind::EllipticCurve;
    out.form.curve = spec.coeffs;
    out.form.label = spec.label.empty() ? "E" + std::to_string(*spec.level) : spec.label;
  } else if (spec.kind == "import") {
    if (spec.path.empty()) throw UsageError("import form needs a path");
    const auto header = cache::read_header(spec.path);
    out.form.weight = static_cast<int>(header.weight);
    out.form.level = header.level;
    out.form.kind = forms::FormKind::Imported;
    out.form.label = spec.label.empty() ? std::filesystem::path(spec.path).stem().string() : spec.label;
  } else {
    throw UsageError("unknown form kind '" + spec.kind + "'");
  }

  const bool builtin = spec.kind == "builtin" || spec.kind == "delta";
  if (spec.fricke) out.form.fricke = *spec.fricke;
  forms::validate(out.form);

  if (spec.kind == "import") {
    out.imported = cache::read_table(spec.path, out.form, false);
  }
  if (!builtin && !spec.fricke) {
    forms::CoefficientTable table;
    if (out.imported) {
      table = *out.imported;
    } else {
      const auto len = static_cast<std::size_t>(64.0 * std::sqrt(static_cast<double>(out.form.level))) + 2000;
      const auto sieve = arith::SieveTables::build(static_cast<std::uint32_t>(len) + 1);
      table = forms::elliptic_coefficients(out.form, len, sieve);
    }
    out.form.fricke = forms::determine_fricke_sign(table, 1.1);
    if (out.imported) out.imported = forms::CoefficientTable(out.form, std::vector<double>(table.values().begin(), table.values().end()));
  }
  return out;
}

}  // namespace twmo::config
