#pragma once

// Single-entry corruptions of a factor system, one family per group of laws.

#include <cstdint>
#include <string>
#include <vector>

#include "fls/factor_core.hpp"

namespace fls {

/// "system", "factor", "stab", "emb", "proj", "ep".
const std::vector<std::string>& fault_families();

/// Applies one corruption of the given family, chosen by `seed` among the
/// eligible entries, and returns a description of it.  Throws UnknownLaw for
/// an unknown family and InvalidSystem when no entry is eligible.
std::string inject_fault(FactorSystem& fs, const std::string& family, std::uint64_t seed);

/// The number of eligible entries for a family.
std::size_t fault_candidates(const FactorSystem& fs, const std::string& family);

}  // namespace fls
