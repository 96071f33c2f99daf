#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "tcsim/extractor.hpp"
#include "tcsim/protocols.hpp"

namespace tcsim {

nlohmann::json report_to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& j);

std::string report_csv_header();
std::string report_csv_row(const RunReport& report);

nlohmann::json extraction_to_json(const ExtractionResult& result);

}  // namespace tcsim
