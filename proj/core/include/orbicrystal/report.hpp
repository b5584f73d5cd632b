#pragma once

#include <string>
#include <utility>
#include <vector>

namespace orbicrystal {

struct CheckReport {
  std::string check;
  std::vector<std::pair<std::string, std::string>> parameters;
  bool pass = true;
  bool exact = true;
  std::string max_residual = "0";
  std::vector<std::pair<int, std::string>> residuals_by_cutoff;
  std::string detail;

  void param(const std::string& key, const std::string& value) { parameters.emplace_back(key, value); }
  void param(const std::string& key, long value) { parameters.emplace_back(key, std::to_string(value)); }
  // Records the first violation and marks the report failed.
  void fail(const std::string& what) {
    if (pass) detail = what;
    pass = false;
  }
};

// JSON object text with keys check, parameters, status, exact, max_residual,
// residuals_by_cutoff, detail.
std::string report_json(const CheckReport& report, int indent = 2);
std::string reports_json(const std::vector<CheckReport>& reports, const std::string& schema, int indent = 2);

}  // namespace orbicrystal
