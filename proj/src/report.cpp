#include "twmo/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "twmo/error.hpp"

namespace twmo::report {

using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw NumericalError("cannot format a double");
  return std::string(buf, ptr);
}

json to_json(const lfun::CentralValue& v) {
  return {{"value", v.value},
          {"omega", v.omega},
          {"truncation", v.truncation},
          {"tail_estimate", v.tail_estimate},
          {"method", lfun::method_name(v.method)},
          {"gross_mass", v.gross_mass}};
}

json to_json(const euler::Truncation& t) {
  return {{"value", t.value}, {"half_value", t.half_value}, {"delta", t.delta}, {"primes", t.primes}};
}

json to_json(const euler::EulerConstantReport& r) {
  json E = json::object();
  json Z = json::object();
  for (std::size_t i = 0; i < 4; ++i) {
    E[std::to_string(r.q_primes[i])] = to_json(r.E[i]);
    Z[std::to_string(r.q_primes[i])] = r.Z[i];
  }
  return {{"prime_cutoff", r.prime_cutoff},
          {"E_values", E},
          {"C_fg", r.C_fg},
          {"C_fg_half", r.C_fg_half},
          {"stabilization", r.stabilization},
          {"sign_pattern", {r.s_f, r.s_g}},
          {"bracket", r.bracket},
          {"bracket_factorized", r.bracket_factorized},
          {"factorization_residual", r.factorization_residual},
          {"edge_L_values",
           {{"rankin_selberg", to_json(r.edge.rankin_selberg)},
            {"sym2_f", to_json(r.edge.sym2_f)},
            {"sym2_g", to_json(r.edge.sym2_g)}}},
          {"Z_ratios", Z}};
}

json to_json(const moment::Attrition& a) {
  return {{"candidates", a.candidates}, {"parity", a.parity},   {"squarefree", a.squarefree},
          {"gcd", a.gcd},               {"signs", a.signs},     {"admissible", a.admissible}};
}

json to_json(const moment::IParts& p) {
  return {{"Y", p.Y},
          {"I", p.I},
          {"literal", p.literal},
          {"identity_residual", p.identity_residual}};
}

json summary_json(const moment::MomentRun& run) {
  json j = {{"X", run.X},
            {"f", run.f_label},
            {"g", run.g_label},
            {"weight_function", run.J_name},
            {"tol", run.tol},
            {"records", run.records.size()},
            {"S_J", run.S_J},
            {"J_hat0", run.J_hat0},
            {"C_fg", run.C_fg},
            {"attrition", to_json(run.attrition)},
            {"max_abs_L", run.max_abs_L},
            {"max_abs_Lprime", run.max_abs_Lprime},
            {"error_budget", run.error_budget}};
  if (run.has_prediction) {
    j["prediction"] = run.prediction;
    j["ratio"] = run.ratio;
  } else {
    j["prediction"] = nullptr;
    j["ratio"] = nullptr;
    j["warning"] = "empty family: S_J = 0, prediction comparison suppressed";
  }
  json parts = json::array();
  for (const auto& p : run.decompositions) parts.push_back(to_json(p));
  j["decompositions"] = parts;
  return j;
}

std::string records_csv(const std::vector<moment::Record>& records) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : records) {
    out += std::to_string(r.d) + ',' + std::to_string(r.omega_f) + ',' +
           std::to_string(r.omega_g) + ',' + format_double(r.L) + ',' + format_double(r.Lprime) +
           ',' + format_double(r.Jweight) + ',' + std::to_string(r.truncation_f) + ',' +
           std::to_string(r.truncation_g) + '\n';
  }
  return out;
}

std::vector<moment::Record> parse_records_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw UsageError("unexpected CSV header");
  std::vector<moment::Record> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    if (cells.size() != 8) throw UsageError("malformed CSV row: " + line);
    auto num = [&](const std::string& c, auto& v) {
      const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (ec != std::errc() || ptr != c.data() + c.size()) {
        throw UsageError("malformed CSV cell '" + c + "'");
      }
    };
    moment::Record r{};
    num(cells[0], r.d);
    num(cells[1], r.omega_f);
    num(cells[2], r.omega_g);
    num(cells[3], r.L);
    num(cells[4], r.Lprime);
    num(cells[5], r.Jweight);
    num(cells[6], r.truncation_f);
    num(cells[7], r.truncation_g);
    out.push_back(r);
  }
  return out;
}

namespace {

std::string x_tag(double X) {
  if (X == std::floor(X) && std::abs(X) < 1e15) return std::to_string(static_cast<long long>(X));
  return format_double(X);
}

}  // namespace

std::filesystem::path csv_path(const std::filesystem::path& dir, double X) {
  return dir / ("moment_X" + x_tag(X) + ".csv");
}

std::filesystem::path json_path(const std::filesystem::path& dir, double X) {
  return dir / ("moment_X" + x_tag(X) + ".json");
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ResourceError("cannot write " + path.string());
  out << text;
  if (!out) throw ResourceError("short write to " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace twmo::report
