#include "tcsim/report.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "tcsim/errors.hpp"

namespace tcsim {

namespace {

nlohmann::json opt_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string csv_number(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

nlohmann::json report_to_json(const RunReport& report) {
  nlohmann::json j;
  j["protocol"] = report.protocol_id;
  j["mode"] = report.mode;
  j["trials"] =
      report.trials ? nlohmann::json(*report.trials) : nlohmann::json(nullptr);
  j["acceptance_estimate"] = report.acceptance_estimate;
  j["std_error"] = opt_json(report.std_error);
  j["exact_probability"] = opt_json(report.exact_probability);
  j["closedform_value"] = report.closedform_value;
  j["closedform_source"] = report.closedform_source;
  j["deviation"] = report.deviation;
  j["completeness_threshold"] = opt_json(report.completeness_threshold);
  j["soundness_threshold"] = opt_json(report.soundness_threshold);
  return j;
}

RunReport report_from_json(const nlohmann::json& j) {
  RunReport report;
  try {
    report.protocol_id = j.at("protocol").get<std::string>();
    report.mode = j.at("mode").get<std::string>();
    if (!j.at("trials").is_null()) {
      report.trials = j["trials"].get<std::int64_t>();
    }
    report.acceptance_estimate = j.at("acceptance_estimate").get<double>();
    if (!j.at("std_error").is_null()) {
      report.std_error = j["std_error"].get<double>();
    }
    if (!j.at("exact_probability").is_null()) {
      report.exact_probability = j["exact_probability"].get<double>();
    }
    report.closedform_value = j.at("closedform_value").get<double>();
    report.closedform_source = j.at("closedform_source").get<std::string>();
    report.deviation = j.at("deviation").get<double>();
    if (j.contains("completeness_threshold") &&
        !j["completeness_threshold"].is_null()) {
      report.completeness_threshold = j["completeness_threshold"].get<double>();
    }
    if (j.contains("soundness_threshold") && !j["soundness_threshold"].is_null()) {
      report.soundness_threshold = j["soundness_threshold"].get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("report: malformed JSON: ") + e.what());
  }
  return report;
}

std::string report_csv_header() {
  return "protocol,mode,trials,acceptance_estimate,std_error,exact_probability,"
         "closedform_value,closedform_source,deviation";
}

std::string report_csv_row(const RunReport& report) {
  std::ostringstream out;
  out << report.protocol_id << ',' << report.mode << ',';
  if (report.trials) {
    out << *report.trials;
  }
  out << ',' << csv_number(report.acceptance_estimate) << ',';
  if (report.std_error) {
    out << csv_number(*report.std_error);
  }
  out << ',';
  if (report.exact_probability) {
    out << csv_number(*report.exact_probability);
  }
  out << ',' << csv_number(report.closedform_value) << ','
      << report.closedform_source << ',' << csv_number(report.deviation);
  return out.str();
}

nlohmann::json extraction_to_json(const ExtractionResult& result) {
  nlohmann::json j;
  j["n_qubits"] = result.eta.n_qubits();
  j["energy"] = result.energy;
  j["p_acc_input"] = result.p_acc_input;
  j["epsilon_bound"] = result.epsilon_bound;
  nlohmann::json rows = nlohmann::json::array();
  const Matrix& m = result.eta.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  j["eta"] = std::move(rows);
  return j;
}

}  // namespace tcsim
