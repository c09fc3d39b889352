#include "fls/factor_core.hpp"

#include <algorithm>

#include "fls/error.hpp"

namespace fls {

System::System(IndexPoset poset, std::vector<std::vector<std::string>> carriers)
    : poset_(std::move(poset)), carriers_(std::move(carriers)) {
  const std::size_t n = poset_.size();
  if (carriers_.size() != n) {
    throw Error(ErrorKind::ArityMismatch, "expected " + std::to_string(n) + " carriers, got " +
                                              std::to_string(carriers_.size()));
  }
  offsets_.assign(n + 1, 0);
  for (Index k = 0; k < n; ++k) {
    if (carriers_[k].empty()) {
      throw Error(ErrorKind::InvalidSystem, "empty carrier at index " + poset_.id(k));
    }
    offsets_[k + 1] = offsets_[k] + carriers_[k].size();
  }
  succ_.resize(n * n);
  for (Index later = 0; later < n; ++later)
    for (Index earlier = 0; earlier < n; ++earlier)
      if (poset_.le(earlier, later))
        succ_[later * n + earlier].assign(carriers_[earlier].size(), Bits(carriers_[later].size()));
}

std::optional<std::size_t> System::find_element(Index k, std::string_view name) const {
  const auto& c = carriers_.at(k);
  auto it = std::find(c.begin(), c.end(), name);
  if (it == c.end()) return std::nullopt;
  return static_cast<std::size_t>(it - c.begin());
}

State System::find_state(std::string_view index_id, std::string_view elem_name) const {
  const Index k = poset_.find(index_id);
  auto e = find_element(k, elem_name);
  if (!e) throw Error(ErrorKind::UnknownState, std::string(elem_name) + "@" + std::string(index_id));
  return {k, *e};
}

std::string System::render(State s) const { return carriers_.at(s.index).at(s.elem) + "@" + poset_.id(s.index); }

void System::check_state(State s) const {
  if (s.index >= poset_.size() || s.elem >= carriers_[s.index].size()) {
    throw Error(ErrorKind::UnknownState, std::to_string(s.elem) + "@#" + std::to_string(s.index));
  }
}

bool System::pred(State later, State earlier) const {
  const auto& rows = succ_[later.index * poset_.size() + earlier.index];
  if (rows.empty()) return false;
  return rows[earlier.elem][later.elem];
}

void System::set_pred(State later, State earlier, bool value) {
  check_state(later);
  check_state(earlier);
  auto& rows = succ_[later.index * poset_.size() + earlier.index];
  if (rows.empty()) {
    throw Error(ErrorKind::InvalidSystem,
                "predecessor pair across incomparable indices " + poset_.id(later.index) + ", " +
                    poset_.id(earlier.index));
  }
  rows[earlier.elem][later.elem] = value;
}

void System::add_diagonal() {
  for (Index k = 0; k < poset_.size(); ++k)
    for (std::size_t e = 0; e < carriers_[k].size(); ++e) set_pred({k, e}, {k, e}, true);
}

const Bits& System::successors(Index later, State earlier) const {
  const auto& rows = succ_[later * poset_.size() + earlier.index];
  if (rows.empty()) throw Error(ErrorKind::UnknownIndex, "indices not comparable");
  return rows[earlier.elem];
}

State System::state_at(std::size_t id) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), id);
  const Index k = static_cast<Index>(it - offsets_.begin()) - 1;
  return {k, id - offsets_[k]};
}

std::vector<State> System::states() const {
  std::vector<State> out;
  out.reserve(state_count());
  for (Index k = 0; k < poset_.size(); ++k)
    for (std::size_t e = 0; e < carriers_[k].size(); ++e) out.push_back({k, e});
  return out;
}

std::vector<State> System::states_at(Index k) const {
  std::vector<State> out;
  for (std::size_t e = 0; e < carrier_size(k); ++e) out.push_back({k, e});
  return out;
}

bool consistent(const System& sys, State a, State b) {
  const auto& p = sys.poset();
  for (Index k = 0; k < p.size(); ++k) {
    if (!p.le(a.index, k) || !p.le(b.index, k)) continue;
    if (sys.successors(k, a).intersects(sys.successors(k, b))) return true;
  }
  return false;
}

namespace {

bool fail(std::string* witness, std::string text) {
  if (witness) *witness = std::move(text);
  return false;
}

// Iterates comparable pairs (earlier <= later).
template <class F>
bool for_comparable(const IndexPoset& p, F&& f) {
  for (Index later = 0; later < p.size(); ++later)
    for (Index earlier = 0; earlier < p.size(); ++earlier)
      if (p.le(earlier, later) && !f(earlier, later)) return false;
  return true;
}

template <class F>
bool for_chains(const IndexPoset& p, F&& f) {
  for (Index i = 0; i < p.size(); ++i)
    for (Index j = 0; j < p.size(); ++j) {
      if (!p.le(i, j)) continue;
      for (Index k = 0; k < p.size(); ++k)
        if (p.le(j, k) && !f(i, j, k)) return false;
    }
  return true;
}

}  // namespace

bool check_system(const System& sys, std::string* witness) {
  for (State s : sys.states())
    if (!sys.pred(s, s)) return fail(witness, "missing reflexive pair (" + sys.poset().id(s.index) + ", " + sys.render(s) + ")");
  return true;
}

bool check_fun(const System& sys, std::string* witness) {
  for (Index k = 0; k < sys.poset().size(); ++k)
    for (std::size_t x = 0; x < sys.carrier_size(k); ++x)
      for (std::size_t y = 0; y < sys.carrier_size(k); ++y) {
        const State a{k, x}, b{k, y};
        const bool c = consistent(sys, a, b);
        const bool p = sys.pred(a, b);
        const bool eq = x == y;
        if (c != p || p != eq) {
          return fail(witness, sys.render(a) + " vs " + sys.render(b) + ": consistent=" +
                                   std::to_string(c) + " pred=" + std::to_string(p) +
                                   " equal=" + std::to_string(eq));
        }
      }
  return true;
}

bool check_prefactor(const System& sys, std::string* witness) {
  const auto& p = sys.poset();
  const bool factor = for_comparable(p, [&](Index i, Index i2) {
    for (State a : sys.states_at(i))
      for (State a2 : sys.states_at(i2))
        if (consistent(sys, a2, a) != sys.pred(a2, a)) {
          return fail(witness, sys.render(a2) + " # " + sys.render(a) + " disagrees with ~>");
        }
    return true;
  });
  if (!factor) return false;
  // # restricted to one carrier is then an equivalence.
  for (Index k = 0; k < p.size(); ++k) {
    const auto here = sys.states_at(k);
    for (State a : here) {
      if (!consistent(sys, a, a)) return fail(witness, sys.render(a) + " not consistent with itself");
      for (State b : here) {
        if (!consistent(sys, a, b)) continue;
        for (State c : here)
          if (consistent(sys, b, c) && !consistent(sys, a, c)) {
            return fail(witness, "# not transitive on " + sys.render(a) + ", " + sys.render(b) + ", " + sys.render(c));
          }
      }
    }
  }
  return true;
}

bool check_stable(const System& sys, std::string* witness) {
  return for_comparable(sys.poset(), [&](Index i, Index i2) {
    for (State a2 : sys.states_at(i2))
      for (State a : sys.states_at(i)) {
        if (!sys.pred(a2, a)) continue;
        for (State b : sys.states_at(i))
          if (consistent(sys, a, b) && !sys.pred(a2, b)) {
            return fail(witness, sys.render(a2) + " ~> " + sys.render(a) + " # " + sys.render(b) +
                                     " but not " + sys.render(a2) + " ~> " + sys.render(b));
          }
      }
    return true;
  });
}

bool check_ep_total(const FactorSystem& fs, std::string* witness) {
  const auto& sys = fs.sys;
  return for_comparable(fs.poset(), [&](Index i, Index i2) {
    const auto& e = fs.ep.emb(i, i2);
    const auto& q = fs.ep.proj(i2, i);
    if (e.size() != sys.carrier_size(i)) return fail(witness, "emb " + fs.poset().id(i) + " -> " + fs.poset().id(i2) + " not total");
    if (q.size() != sys.carrier_size(i2)) return fail(witness, "proj " + fs.poset().id(i2) + " -> " + fs.poset().id(i) + " not total");
    for (auto x : e)
      if (x >= sys.carrier_size(i2)) return fail(witness, "emb value out of range");
    for (auto x : q)
      if (x >= sys.carrier_size(i)) return fail(witness, "proj value out of range");
    return true;
  });
}

bool check_emb_family(const FactorSystem& fs, std::string* witness) {
  if (!check_ep_total(fs, witness)) return false;
  const auto& sys = fs.sys;
  const auto& p = fs.poset();
  for (Index i = 0; i < p.size(); ++i)
    for (State a : sys.states_at(i))
      if (!consistent(sys, fs.emb(a, i), a)) return fail(witness, "emb(" + sys.render(a) + ") at same index not # to it");
  // # preservation.
  const bool preserves = for_comparable(p, [&](Index i, Index i2) {
    for (State a : sys.states_at(i))
      for (State b : sys.states_at(i))
        if (consistent(sys, a, b) && !consistent(sys, fs.emb(a, i2), fs.emb(b, i2))) {
          return fail(witness, "emb to " + p.id(i2) + " breaks " + sys.render(a) + " # " + sys.render(b));
        }
    return true;
  });
  if (!preserves) return false;
  return for_chains(p, [&](Index i, Index i1, Index i2) {
    for (State a : sys.states_at(i)) {
      const State twice = fs.emb(fs.emb(a, i1), i2);
      if (!consistent(sys, twice, fs.emb(a, i2))) {
        return fail(witness, "emb composition " + p.id(i) + "->" + p.id(i1) + "->" + p.id(i2) + " at " + sys.render(a));
      }
    }
    // (Emb): a' ~> a  implies  emb(a') ~> a.
    for (State a1 : sys.states_at(i1))
      for (State a : sys.states_at(i))
        if (sys.pred(a1, a) && !sys.pred(fs.emb(a1, i2), a)) {
          return fail(witness, sys.render(a1) + " ~> " + sys.render(a) + " but not " +
                                   sys.render(fs.emb(a1, i2)) + " ~> " + sys.render(a));
        }
    return true;
  });
}

bool check_proj_family(const FactorSystem& fs, std::string* witness) {
  if (!check_ep_total(fs, witness)) return false;
  const auto& sys = fs.sys;
  const auto& p = fs.poset();
  for (Index i = 0; i < p.size(); ++i)
    for (State a : sys.states_at(i))
      if (!consistent(sys, fs.proj(a, i), a)) return fail(witness, "proj(" + sys.render(a) + ") at same index not # to it");
  const bool preserves = for_comparable(p, [&](Index i, Index i2) {
    for (State a : sys.states_at(i2))
      for (State b : sys.states_at(i2))
        if (consistent(sys, a, b) && !consistent(sys, fs.proj(a, i), fs.proj(b, i))) {
          return fail(witness, "proj to " + p.id(i) + " breaks " + sys.render(a) + " # " + sys.render(b));
        }
    return true;
  });
  if (!preserves) return false;
  return for_chains(p, [&](Index i, Index i1, Index i2) {
    for (State a2 : sys.states_at(i2)) {
      const State twice = fs.proj(fs.proj(a2, i1), i);
      if (!consistent(sys, twice, fs.proj(a2, i))) {
        return fail(witness, "proj composition " + p.id(i2) + "->" + p.id(i1) + "->" + p.id(i) + " at " + sys.render(a2));
      }
    }
    // (Proj): a'' ~> a  implies  proj(a'') ~> a.
    for (State a2 : sys.states_at(i2))
      for (State a : sys.states_at(i))
        if (sys.pred(a2, a) && !sys.pred(fs.proj(a2, i1), a)) {
          return fail(witness, sys.render(a2) + " ~> " + sys.render(a) + " but not " +
                                   sys.render(fs.proj(a2, i1)) + " ~> " + sys.render(a));
        }
    return true;
  });
}

bool check_ep_pair(const FactorSystem& fs, std::string* witness) {
  if (!check_ep_total(fs, witness)) return false;
  const auto& sys = fs.sys;
  return for_comparable(fs.poset(), [&](Index i, Index i2) {
    for (State a : sys.states_at(i)) {
      const State back = fs.proj(fs.emb(a, i2), i);
      if (!consistent(sys, back, a)) {
        return fail(witness, "proj(emb(" + sys.render(a) + ")) = " + sys.render(back) + " not # to it");
      }
    }
    return true;
  });
}

bool check_direct(const FactorSystem& fs, std::string* witness) {
  if (!check_prefactor(fs.sys, witness) || !check_emb_family(fs, witness)) return false;
  const auto& sys = fs.sys;
  return for_comparable(fs.poset(), [&](Index i, Index i2) {
    for (State a2 : sys.states_at(i2))
      for (State a : sys.states_at(i))
        if (sys.pred(a2, a) != consistent(sys, a2, fs.emb(a, i2))) {
          return fail(witness, "(Dir) fails at " + sys.render(a2) + ", " + sys.render(a));
        }
    return true;
  });
}

bool check_inverse(const FactorSystem& fs, std::string* witness) {
  if (!check_prefactor(fs.sys, witness) || !check_proj_family(fs, witness)) return false;
  const auto& sys = fs.sys;
  return for_comparable(fs.poset(), [&](Index i, Index i2) {
    for (State a2 : sys.states_at(i2))
      for (State a : sys.states_at(i))
        if (sys.pred(a2, a) != consistent(sys, fs.proj(a2, i), a)) {
          return fail(witness, "(Inv) fails at " + sys.render(a2) + ", " + sys.render(a));
        }
    return true;
  });
}

bool is_factor_system(const FactorSystem& fs, std::string* witness) {
  return check_system(fs.sys, witness) && check_prefactor(fs.sys, witness) &&
         check_emb_family(fs, witness) && check_proj_family(fs, witness) && check_ep_pair(fs, witness);
}

HomomorphismReport check_homomorphism(const FactorSystem& from, const FactorSystem& to,
                                      const std::vector<std::vector<std::size_t>>& maps) {
  HomomorphismReport report;
  const auto& p = from.poset();
  if (!(p == to.poset())) throw Error(ErrorKind::ArityMismatch, "homomorphism between different index posets");
  if (maps.size() != p.size()) throw Error(ErrorKind::ArityMismatch, "one map per index required");
  for (Index k = 0; k < p.size(); ++k) {
    if (maps[k].size() != from.sys.carrier_size(k)) throw Error(ErrorKind::ArityMismatch, "map at " + p.id(k) + " not total");
    for (auto x : maps[k])
      if (x >= to.sys.carrier_size(k)) throw Error(ErrorKind::ArityMismatch, "map at " + p.id(k) + " out of range");
  }
  auto image = [&](State s) { return State{s.index, maps[s.index][s.elem]}; };

  bool hom = true;
  bool strong = true;
  std::string first_strong_failure;
  for_comparable(p, [&](Index i, Index i2) {
    for (State a2 : from.sys.states_at(i2))
      for (State a : from.sys.states_at(i)) {
        const bool src = from.sys.pred(a2, a);
        const bool dst = to.sys.pred(image(a2), image(a));
        if (src && !dst) {
          report.witness = from.sys.render(a2) + " ~> " + from.sys.render(a) + " not preserved";
          hom = false;
          return false;
        }
        if (!src && dst && strong) {
          strong = false;
          first_strong_failure = from.sys.render(a2) + " ~> " + from.sys.render(a) + " not reflected";
        }
      }
    for (State a : from.sys.states_at(i)) {
      if (image(from.emb(a, i2)) != to.emb(image(a), i2)) {
        report.witness = "emb does not commute at " + from.sys.render(a) + " -> " + p.id(i2);
        hom = false;
        return false;
      }
    }
    for (State a2 : from.sys.states_at(i2)) {
      if (image(from.proj(a2, i)) != to.proj(image(a2), i)) {
        report.witness = "proj does not commute at " + from.sys.render(a2) + " -> " + p.id(i);
        hom = false;
        return false;
      }
    }
    return true;
  });
  report.homomorphism = hom;
  report.strong = hom && strong;
  if (hom && !strong) report.witness = first_strong_failure;
  return report;
}

}  // namespace fls
