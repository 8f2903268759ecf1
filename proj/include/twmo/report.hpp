#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "twmo/euler.hpp"
#include "twmo/lfun.hpp"
#include "twmo/moment.hpp"

namespace twmo::report {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

nlohmann::json to_json(const lfun::CentralValue& v);
nlohmann::json to_json(const euler::Truncation& t);
nlohmann::json to_json(const euler::EulerConstantReport& r);
nlohmann::json to_json(const moment::Attrition& a);
nlohmann::json to_json(const moment::IParts& parts);
/// Summary without the per-d records (those go to the CSV).
nlohmann::json summary_json(const moment::MomentRun& run);

inline constexpr const char* kCsvHeader =
    "d,omega_f,omega_g,L,Lprime,Jweight,truncation_f,truncation_g";

std::string records_csv(const std::vector<moment::Record>& records);
/// Throws UsageError on a malformed line.
std::vector<moment::Record> parse_records_csv(const std::string& text);

/// moment_X<X>.csv / moment_X<X>.json under `dir`.
std::filesystem::path csv_path(const std::filesystem::path& dir, double X);
std::filesystem::path json_path(const std::filesystem::path& dir, double X);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace twmo::report
