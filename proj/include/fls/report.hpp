#pragma once

#include <string>
#include <vector>

namespace fls {

/// Outcome of one named check.  `witness` carries the first counterexample
/// when `ok` is false and may carry a short note otherwise.
struct CheckResult {
  std::string name;
  bool ok = true;
  std::string witness;
  double millis = 0.0;
};

inline bool all_ok(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.ok) return false;
  return true;
}

/// One line per record: "PASS name (1.2 ms)" or "FAIL name: witness
/// (1.2 ms)", preceded by a "# subject" line when the subject is non-empty.
std::string render_text(const std::vector<CheckResult>& results, const std::string& subject = "");

/// One JSON object per line with name, verdict ("pass"/"fail"), witness,
/// millis and, when non-empty, subject.
std::string render_jsonl(const std::vector<CheckResult>& results, const std::string& subject = "");

}  // namespace fls
