#pragma once

// Factor-system validators by law name.

#include <string>
#include <vector>

#include "fls/factor_core.hpp"
#include "fls/report.hpp"

namespace fls {

/// system, fun, factor, stab, emb, proj, ep, dir, inv.
const std::vector<std::string>& law_names();

/// Runs the named laws in the order given.  "polarity" holds when the system
/// is direct or inverse; "all" stands for every law up to ep followed by
/// polarity.  Throws UnknownLaw.
std::vector<CheckResult> run_laws(const FactorSystem& fs, const std::vector<std::string>& laws = {"all"});

/// Laws that hold on `reference` but fail on `candidate`.
std::vector<std::string> newly_failing(const FactorSystem& reference, const FactorSystem& candidate);

}  // namespace fls
