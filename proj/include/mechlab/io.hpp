#pragma once

#include <string>

#include "json.hpp"
#include "mechlab/analysis.hpp"
#include "mechlab/mechanism.hpp"

namespace mechlab {

/// JSON serialization. Rationals are written as integers when the
/// denominator is 1 and as "num/den" strings otherwise; readers accept
/// either form. All writers are deterministic (stable key order), so equal
/// inputs produce byte-identical files.

nlohmann::ordered_json rational_to_json(const Rational& q);
Rational rational_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json instance_to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json coins_to_json(const CoinRecord& coins);
CoinRecord coins_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json ratio_report_to_json(const RatioReport& report);
/// One row per trial: seed,branch,welfare_num,welfare_den,opt,ratio.
std::string ratio_report_to_csv(const RatioReport& report);

nlohmann::ordered_json deviation_report_to_json(const DeviationReport& report);
std::string deviation_report_to_csv(const DeviationReport& report);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace mechlab
