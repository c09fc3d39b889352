#pragma once

// Consistent sets, dynamic elements and the limit elem(F) of a prefactor
// system under the canonical filter, together with limit-level embedding,
// projection and application.

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "fls/factor_core.hpp"
#include "fls/funspace.hpp"
#include "fls/report.hpp"

namespace fls {

/// A finite set of states, sorted and duplicate-free.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::vector<State> states);

  const std::vector<State>& states() const noexcept { return states_; }
  bool contains(State s) const;
  bool empty() const noexcept { return states_.empty(); }
  std::size_t size() const noexcept { return states_.size(); }
  std::vector<State> at(Index k) const;
  bool subset_of(const StateSet& other) const;

  /// Indices carrying at least one member.
  IndexSet support(const IndexPoset& poset) const;

  friend auto operator<=>(const StateSet&, const StateSet&) = default;

 private:
  std::vector<State> states_;
};

using ConsistentSet = StateSet;

/// A maximal consistent set.  Equality is set equality of the members.
struct DynamicElement {
  StateSet members;

  bool contains(State s) const { return members.contains(s); }
  friend auto operator<=>(const DynamicElement&, const DynamicElement&) = default;
};

/// "{0@1,0@2}" in member order.
std::string render(const System& sys, const StateSet& set);
inline std::string render(const System& sys, const DynamicElement& e) { return render(sys, e.members); }

/// Pairwise a' ~> a for members with i <= i', and support in the filter.
bool is_consistent_set(const System& sys, const StateSet& set, std::string* witness = nullptr);

/// The unique dynamic element containing `set`: every b_i with a' ~> b_i for
/// all members a' at indices i' >= i.  Throws NotConsistent.
DynamicElement maximal_closure(const System& sys, const ConsistentSet& set);

/// Every dynamic element, sorted, seeded from the states at one top index.
std::vector<DynamicElement> elem(const System& sys);

/// a_i # b_i for all members of both sets at a common index.
bool equiv(const System& sys, const ConsistentSet& a, const ConsistentSet& b);

/// Closure of the emb-orbit { emb(a, i') : i' >= i }.
DynamicElement emb_limit(const FactorSystem& fs, State a);

/// proj(a', i) for the first member a' at an index i' >= i.
State proj_limit(const FactorSystem& fs, Index i, const DynamicElement& element);

/// Whether every admissible choice of member in proj_limit gives #-equal states.
bool proj_limit_unique(const FactorSystem& fs, Index i, const DynamicElement& element);

/// { f(a) : f in zeta, a in alpha } before closure.
StateSet app_raw(const FunctionSpace& space, const StateSet& zeta, const StateSet& alpha);

/// Maximal closure of app_raw.  Throws NotConsistentApplication when the raw
/// image is not a consistent set.
DynamicElement app(const FunctionSpace& space, const DynamicElement& zeta, const DynamicElement& alpha);

/// Position of `e` in `elements`, or nullopt.
std::optional<std::size_t> position_of(const std::vector<DynamicElement>& elements, const DynamicElement& e);

/// The target (candidate, membership) checked for being maximal, extensional
/// and complete, and for the compactification laws with Emb = emb_limit and
/// Proj = proj_limit.
std::vector<CheckResult> check_target_laws(const FactorSystem& fs, const std::vector<StateSet>& candidate);

/// A target given by its elements and their extensions Ext(t).  Emb_i(a_i)
/// is the element whose extension is ~ to the emb-orbit of a_i, and
/// Proj_i(t) projects the first member of Ext(t) at an index >= i.
struct TargetData {
  std::vector<std::string> names;
  std::vector<StateSet> extensions;
  /// emb[i][e]: position of Emb_i(e) for element e of carrier(i).
  std::vector<std::vector<std::size_t>> emb;
  /// proj[i][t]: element of carrier(i) given by Proj_i(t).
  std::vector<std::vector<std::size_t>> proj;
};

/// Derives Emb and Proj for the given extensions.  Throws InvalidSystem when
/// some emb-orbit has no or several limit elements, or some extension has no
/// member above an index.
TargetData make_target(const FactorSystem& fs, std::vector<std::string> names,
                       std::vector<StateSet> extensions);

/// elem(F) with membership.
TargetData limit_target(const FactorSystem& fs);

/// The system over I + {top} with carrier(top) the target, a ~> a_i iff
/// a_i in Ext(a), Emb_i = emb(i, top) and Proj_i = proj(top, i).
FactorSystem compactify(const FactorSystem& fs, const TargetData& target);

/// Stability, directness and inverseness carried over to the compactification
/// by elem(F), together with the index-set conditions on limit elements.
std::vector<CheckResult> check_compactified_polarity(const FactorSystem& fs);

/// The unique map from a target (given by its extensions) into elem(F) that
/// respects the target relations; nullopt if some element has no or several
/// images.
std::optional<std::vector<std::size_t>> limit_map(const System& sys, const std::vector<StateSet>& target_extensions);

/// [elem(M) ->_F elem(N)]: maps from elem(M) to elem(N), as tables of
/// positions, whose index set lies in the filter.  f |> g_{i->j} holds when
/// f(alpha) contains g(a_i) for every alpha and every a_i in alpha.
struct FunctionTarget {
  std::vector<Table> functions;
  std::vector<StateSet> extensions;
};

FunctionTarget function_target(const FunctionSpace& space, std::size_t cap = default_size_cap());

struct IsoReport {
  std::size_t limit_count = 0;     // |elem([M -> N])|
  std::size_t function_count = 0;  // |[elem(M) ->_F elem(N)]|
  bool bijective = false;
  bool hom_forward = false;
  bool hom_backward = false;
  std::string witness;

  bool ok() const { return bijective && hom_forward && hom_backward; }
};

/// Compares elem([M -> N]) with the functions elem(M) -> elem(N) whose index
/// set lies in the filter, through zeta |-> (alpha |-> app(zeta, alpha)).
IsoReport check_limit_funspace_iso(const FactorSystem& dom, const FactorSystem& cod,
                                   std::size_t cap = default_size_cap());

}  // namespace fls
