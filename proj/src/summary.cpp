#include "tcsim/summary.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "tcsim/report.hpp"

namespace tcsim {

namespace {

std::string fixed(double v, int prec = 9) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(prec) << v;
  return out.str();
}

}  // namespace

std::vector<SummaryRow> evaluate_reports(std::span<const RunReport> reports,
                                         const SummaryOptions& opts) {
  std::vector<SummaryRow> rows;
  rows.reserve(reports.size());
  for (const RunReport& r : reports) {
    SummaryRow row{r, false, ""};
    const bool sampled = r.mode == "sample";
    // Statistical slack: sampled values only have to land within a few
    // standard errors; exact values must hit the closed form nearly on the
    // nose. The 1e-9 floor covers zero-variance sample runs.
    const double slack =
        sampled ? opts.sigma_factor * r.std_error.value_or(0.0) + 1e-9
                : opts.tol_exact;
    if (closedform_is_bound(r)) {
      const double bound_slack = sampled ? slack : 1e-9;
      row.pass = r.acceptance_estimate <= r.closedform_value + bound_slack;
      row.note = row.pass ? "<= bound" : "exceeds bound";
    } else {
      row.pass = r.deviation <= slack;
      row.note = row.pass ? "matches" : "deviates by " + fixed(r.deviation, 12);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

bool all_pass(std::span<const SummaryRow> rows) {
  return std::all_of(rows.begin(), rows.end(),
                     [](const SummaryRow& r) { return r.pass; });
}

std::string summary_text(std::span<const SummaryRow> rows) {
  std::ostringstream out;
  out << std::left << std::setw(14) << "protocol" << std::setw(11) << "mode"
      << std::setw(15) << "value" << std::setw(15) << "closedform"
      << std::setw(20) << "source" << std::setw(16) << "deviation"
      << std::setw(6) << "state" << "note\n";
  for (const SummaryRow& row : rows) {
    const RunReport& r = row.report;
    out << std::left << std::setw(14) << r.protocol_id << std::setw(11) << r.mode
        << std::setw(15) << fixed(r.acceptance_estimate) << std::setw(15)
        << fixed(r.closedform_value) << std::setw(20) << r.closedform_source
        << std::setw(16) << fixed(r.deviation, 11) << std::setw(6)
        << (row.pass ? "PASS" : "FAIL") << row.note << "\n";
  }
  return out.str();
}

std::string summary_csv(std::span<const SummaryRow> rows) {
  std::string out = report_csv_header() + ",status\n";
  for (const SummaryRow& row : rows) {
    out += report_csv_row(row.report);
    out += row.pass ? ",PASS" : ",FAIL";
    out += "\n";
  }
  return out;
}

}  // namespace tcsim
