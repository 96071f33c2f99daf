#pragma once

#include <span>
#include <string>
#include <vector>

#include "tcsim/protocols.hpp"

namespace tcsim {

struct SummaryOptions {
  double tol_exact = 1e-12;   // equality sources, enumerate mode
  double sigma_factor = 4.0;  // statistical sources, sample mode
};

struct SummaryRow {
  RunReport report;
  bool pass = false;
  std::string note;
};

// Pass/fail per report: equality sources must match the closed form within
// tolerance (tol_exact, or sigma_factor standard errors in sample mode);
// "-bound" sources must stay at or below the closed form.
std::vector<SummaryRow> evaluate_reports(std::span<const RunReport> reports,
                                         const SummaryOptions& opts = {});

bool all_pass(std::span<const SummaryRow> rows);

// Aligned fixed-width table, one row per report plus a header.
std::string summary_text(std::span<const SummaryRow> rows);

// CSV with the report columns plus a status column.
std::string summary_csv(std::span<const SummaryRow> rows);

}  // namespace tcsim
