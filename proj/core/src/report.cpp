#include "orbicrystal/report.hpp"

#include <json.hpp>

namespace orbicrystal {

namespace {

nlohmann::ordered_json to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = params;
  j["status"] = r.pass ? "pass" : "fail";
  j["exact"] = r.exact;
  j["max_residual"] = r.max_residual;
  nlohmann::ordered_json res = nlohmann::ordered_json::array();
  for (const auto& [d, v] : r.residuals_by_cutoff) res.push_back({{"cutoff", d}, {"residual", v}});
  j["residuals_by_cutoff"] = res;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

}  // namespace

std::string report_json(const CheckReport& report, int indent) { return to_json(report).dump(indent); }

std::string reports_json(const std::vector<CheckReport>& reports, const std::string& schema, int indent) {
  nlohmann::ordered_json j;
  j["schema"] = schema;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  j["reports"] = arr;
  return j.dump(indent);
}

}  // namespace orbicrystal
