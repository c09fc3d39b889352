#pragma once

// The natural-number factor systems nat_1 <= nat_2 <= ... <= nat_N with
// emb n -> n and proj n -> min(n, i-1), in their three predecessor variants,
// and the one-index Boolean system interpreting prop.

#include <string>

#include "fls/factor_core.hpp"

namespace fls::fixtures {

enum class NatVariant { Direct, Inverse, Chaos };

/// Indices "1".."N"; carrier at i is {"0",...,"i-1"}.
FactorSystem nat(NatVariant variant, int n);

inline FactorSystem nat_dir(int n) { return nat(NatVariant::Direct, n); }
inline FactorSystem nat_inv(int n) { return nat(NatVariant::Inverse, n); }
inline FactorSystem nat_chaos(int n) { return nat(NatVariant::Chaos, n); }

/// Single index "p", carrier {"false", "true"}, identity relations and maps.
FactorSystem prop();

/// Looks up "prop", "nat_dir_3", "nat_inv_2", ... ; throws ParseError.
FactorSystem by_name(const std::string& name);

}  // namespace fls::fixtures
