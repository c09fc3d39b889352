#include "fls/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace fls {

std::string render_text(const std::vector<CheckResult>& results, const std::string& subject) {
  std::string out;
  if (!subject.empty()) out += "# " + subject + "\n";
  for (const auto& r : results) {
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.1f", r.millis);
    out += (r.ok ? "PASS " : "FAIL ") + r.name;
    if (!r.witness.empty()) out += ": " + r.witness;
    out += std::string(" (") + ms + " ms)\n";
  }
  return out;
}

std::string render_jsonl(const std::vector<CheckResult>& results, const std::string& subject) {
  std::string out;
  for (const auto& r : results) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["verdict"] = r.ok ? "pass" : "fail";
    j["witness"] = r.witness;
    j["millis"] = r.millis;
    if (!subject.empty()) j["subject"] = subject;
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace fls
