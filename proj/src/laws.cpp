#include "fls/laws.hpp"

#include <chrono>

#include "fls/error.hpp"

namespace fls {

namespace {

bool run_one(const FactorSystem& fs, const std::string& law, std::string* witness) {
  if (law == "system") return check_system(fs.sys, witness);
  if (law == "fun") return check_fun(fs.sys, witness);
  if (law == "factor") return check_prefactor(fs.sys, witness);
  if (law == "stab") return check_stable(fs.sys, witness);
  if (law == "emb") return check_emb_family(fs, witness);
  if (law == "proj") return check_proj_family(fs, witness);
  if (law == "ep") return check_ep_total(fs, witness) && check_ep_pair(fs, witness);
  if (law == "dir") return check_direct(fs, witness);
  if (law == "inv") return check_inverse(fs, witness);
  if (law == "polarity") {
    const bool dir = check_direct(fs, nullptr), inv = check_inverse(fs, nullptr);
    if (witness) *witness = dir && inv ? "direct and inverse" : dir ? "direct" : inv ? "inverse" : "neither direct nor inverse";
    return dir || inv;
  }
  throw Error(ErrorKind::UnknownLaw, law);
}

}  // namespace

const std::vector<std::string>& law_names() {
  static const std::vector<std::string> names{"system", "fun", "factor", "stab", "emb", "proj", "ep", "dir", "inv"};
  return names;
}

std::vector<CheckResult> run_laws(const FactorSystem& fs, const std::vector<std::string>& laws) {
  std::vector<std::string> selected;
  for (const auto& law : laws) {
    if (law == "all") {
      selected.insert(selected.end(), law_names().begin(), law_names().end() - 2);
      selected.push_back("polarity");
    } else if (law == "polarity") {
      selected.push_back(law);
    } else {
      bool known = false;
      for (const auto& n : law_names()) known = known || n == law;
      if (!known) throw Error(ErrorKind::UnknownLaw, law);
      selected.push_back(law);
    }
  }
  std::vector<CheckResult> out;
  for (const auto& law : selected) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r{law, true, {}, 0.0};
    r.ok = run_one(fs, law, &r.witness);
    if (r.ok && law != "polarity") r.witness.clear();
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::string> newly_failing(const FactorSystem& reference, const FactorSystem& candidate) {
  std::vector<std::string> out;
  for (const auto& law : law_names())
    if (run_one(reference, law, nullptr) && !run_one(candidate, law, nullptr)) out.push_back(law);
  return out;
}

}  // namespace fls
