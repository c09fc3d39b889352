#include "fls/limits.hpp"

#include <algorithm>
#include <chrono>
#include <map>

#include "fls/error.hpp"

namespace fls {

StateSet::StateSet(std::vector<State> states) : states_(std::move(states)) {
  std::sort(states_.begin(), states_.end());
  states_.erase(std::unique(states_.begin(), states_.end()), states_.end());
}

bool StateSet::contains(State s) const { return std::binary_search(states_.begin(), states_.end(), s); }

std::vector<State> StateSet::at(Index k) const {
  std::vector<State> out;
  for (const State& s : states_)
    if (s.index == k) out.push_back(s);
  return out;
}

bool StateSet::subset_of(const StateSet& other) const {
  return std::includes(other.states_.begin(), other.states_.end(), states_.begin(), states_.end());
}

IndexSet StateSet::support(const IndexPoset& poset) const {
  IndexSet out(poset.size());
  for (const State& s : states_) out.insert(s.index);
  return out;
}

std::string render(const System& sys, const StateSet& set) {
  std::string out = "{";
  bool first = true;
  for (const State& s : set.states()) {
    if (!first) out += ',';
    first = false;
    out += sys.render(s);
  }
  out += '}';
  return out;
}

bool is_consistent_set(const System& sys, const StateSet& set, std::string* witness) {
  const IndexPoset& poset = sys.poset();
  for (const State& later : set.states()) {
    for (const State& earlier : set.states()) {
      if (!poset.le(earlier.index, later.index)) continue;
      if (!sys.pred(later, earlier)) {
        if (witness) *witness = sys.render(later) + " ~> " + sys.render(earlier) + " fails";
        return false;
      }
    }
  }
  if (!in_filter(poset, set.support(poset))) {
    if (witness) *witness = "support of " + render(sys, set) + " is not in the filter";
    return false;
  }
  return true;
}

DynamicElement maximal_closure(const System& sys, const ConsistentSet& set) {
  std::string why;
  if (!is_consistent_set(sys, set, &why)) throw Error(ErrorKind::NotConsistent, why);
  const IndexPoset& poset = sys.poset();
  std::vector<State> out;
  for (const State& b : sys.states()) {
    bool ok = true;
    for (const State& a : set.states()) {
      if (poset.le(b.index, a.index) && !sys.pred(a, b)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(b);
  }
  return DynamicElement{StateSet(std::move(out))};
}

std::vector<DynamicElement> elem(const System& sys) {
  const IndexPoset& poset = sys.poset();
  const Index t = poset.top();
  std::vector<DynamicElement> out;
  for (std::size_t e = 0; e < sys.carrier_size(t); ++e) {
    const State seed{t, e};
    std::vector<State> alpha;
    for (Index u : poset.top_class())
      for (std::size_t b = 0; b < sys.carrier_size(u); ++b)
        if (sys.pred(seed, {u, b})) alpha.push_back({u, b});
    StateSet set(std::move(alpha));
    if (!is_consistent_set(sys, set)) continue;
    out.push_back(maximal_closure(sys, set));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool equiv(const System& sys, const ConsistentSet& a, const ConsistentSet& b) {
  for (const State& x : a.states())
    for (const State& y : b.states())
      if (x.index == y.index && !consistent(sys, x, y)) return false;
  return true;
}

namespace {

StateSet emb_orbit(const FactorSystem& fs, State a) {
  std::vector<State> orbit;
  for (Index k : fs.poset().above(a.index)) orbit.push_back(fs.emb(a, k));
  return StateSet(std::move(orbit));
}

std::optional<State> first_above(const IndexPoset& poset, Index i, const StateSet& set) {
  for (const State& s : set.states())
    if (poset.le(i, s.index)) return s;
  return std::nullopt;
}

}  // namespace

DynamicElement emb_limit(const FactorSystem& fs, State a) { return maximal_closure(fs.sys, emb_orbit(fs, a)); }

State proj_limit(const FactorSystem& fs, Index i, const DynamicElement& element) {
  auto above = first_above(fs.poset(), i, element.members);
  if (!above) throw Error(ErrorKind::NoStageAbove, "no member at or above " + fs.poset().id(i));
  return fs.proj(*above, i);
}

bool proj_limit_unique(const FactorSystem& fs, Index i, const DynamicElement& element) {
  std::vector<State> choices;
  for (const State& s : element.members.states())
    if (fs.poset().le(i, s.index)) choices.push_back(fs.proj(s, i));
  for (const State& x : choices)
    for (const State& y : choices)
      if (!consistent(fs.sys, x, y)) return false;
  return true;
}

StateSet app_raw(const FunctionSpace& space, const StateSet& zeta, const StateSet& alpha) {
  std::vector<State> out;
  for (const State& f : zeta.states()) {
    const Index i = space.indices.left_of(f.index);
    for (const State& a : alpha.states())
      if (a.index == i) out.push_back(space.apply(f, a));
  }
  return StateSet(std::move(out));
}

DynamicElement app(const FunctionSpace& space, const DynamicElement& zeta, const DynamicElement& alpha) {
  StateSet raw = app_raw(space, zeta.members, alpha.members);
  std::string why;
  if (!is_consistent_set(space.cod->sys, raw, &why)) throw Error(ErrorKind::NotConsistentApplication, why);
  return maximal_closure(space.cod->sys, raw);
}

std::optional<std::size_t> position_of(const std::vector<DynamicElement>& elements, const DynamicElement& e) {
  auto it = std::lower_bound(elements.begin(), elements.end(), e);
  if (it != elements.end() && *it == e) return static_cast<std::size_t>(it - elements.begin());
  auto lin = std::find(elements.begin(), elements.end(), e);
  if (lin != elements.end()) return static_cast<std::size_t>(lin - elements.begin());
  return std::nullopt;
}

TargetData make_target(const FactorSystem& fs, std::vector<std::string> names, std::vector<StateSet> extensions) {
  const System& sys = fs.sys;
  const IndexPoset& poset = sys.poset();
  TargetData out{std::move(names), std::move(extensions), {}, {}};
  const std::size_t m = out.extensions.size();
  out.emb.resize(poset.size());
  out.proj.resize(poset.size());
  for (Index i = 0; i < poset.size(); ++i) {
    for (std::size_t e = 0; e < sys.carrier_size(i); ++e) {
      const StateSet orbit = emb_orbit(fs, {i, e});
      std::optional<std::size_t> hit;
      for (std::size_t t = 0; t < m; ++t) {
        if (!equiv(sys, orbit, out.extensions[t])) continue;
        if (hit) throw Error(ErrorKind::InvalidSystem, "emb-orbit of " + sys.render({i, e}) + " has several limits");
        hit = t;
      }
      if (!hit) throw Error(ErrorKind::InvalidSystem, "emb-orbit of " + sys.render({i, e}) + " has no limit");
      out.emb[i].push_back(*hit);
    }
    for (std::size_t t = 0; t < m; ++t) {
      auto above = first_above(poset, i, out.extensions[t]);
      if (!above) throw Error(ErrorKind::NoStageAbove, out.names[t] + " has no member above " + poset.id(i));
      out.proj[i].push_back(fs.proj(*above, i).elem);
    }
  }
  return out;
}

TargetData limit_target(const FactorSystem& fs) {
  std::vector<std::string> names;
  std::vector<StateSet> exts;
  for (const DynamicElement& e : elem(fs.sys)) {
    names.push_back(render(fs.sys, e));
    exts.push_back(e.members);
  }
  return make_target(fs, std::move(names), std::move(exts));
}

FactorSystem compactify(const FactorSystem& fs, const TargetData& target) {
  const IndexPoset& poset = fs.poset();
  const std::size_t n = poset.size();
  std::string top = "top";
  while (poset.lookup(top)) top += "'";
  std::vector<std::string> ids = poset.ids();
  ids.push_back(top);
  std::vector<std::pair<std::string, std::string>> declared;
  for (Index a = 0; a < n; ++a) {
    declared.emplace_back(poset.id(a), top);
    for (Index b = 0; b < n; ++b)
      if (poset.le(a, b)) declared.emplace_back(poset.id(a), poset.id(b));
  }
  IndexPoset bar = IndexPoset::closure(ids, declared);

  std::vector<std::vector<std::string>> carriers;
  for (Index k = 0; k < n; ++k) carriers.push_back(fs.sys.carrier(k));
  carriers.push_back(target.names);
  System sys(bar, carriers);
  for (Index k2 = 0; k2 < n; ++k2)
    for (Index k = 0; k < n; ++k)
      if (poset.le(k, k2))
        for (std::size_t a2 = 0; a2 < fs.sys.carrier_size(k2); ++a2)
          for (std::size_t a = 0; a < fs.sys.carrier_size(k); ++a)
            if (fs.sys.pred({k2, a2}, {k, a})) sys.set_pred({k2, a2}, {k, a}, true);
  for (std::size_t t = 0; t < target.extensions.size(); ++t)
    for (const State& s : target.extensions[t].states()) sys.set_pred({n, t}, s, true);
  for (std::size_t t = 0; t < target.extensions.size(); ++t) sys.set_pred({n, t}, {n, t}, true);

  EpData ep(n + 1);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      if (poset.le(a, b)) {
        ep.emb(a, b) = fs.ep.emb(a, b);
        ep.proj(b, a) = fs.ep.proj(b, a);
      }
  for (Index i = 0; i < n; ++i) {
    ep.emb(i, n) = target.emb[i];
    ep.proj(n, i) = target.proj[i];
  }
  std::vector<std::size_t> id(target.names.size());
  for (std::size_t t = 0; t < id.size(); ++t) id[t] = t;
  ep.emb(n, n) = id;
  ep.proj(n, n) = id;
  return FactorSystem{fs.name + "+" + top, std::move(sys), std::move(ep)};
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

std::vector<CheckResult> check_target_laws(const FactorSystem& fs, const std::vector<StateSet>& candidate) {
  const System& sys = fs.sys;
  const IndexPoset& poset = sys.poset();
  std::vector<CheckResult> out;
  auto start = Clock::now();

  CheckResult target{"target", true, {}, 0.0};
  for (std::size_t t = 0; t < candidate.size() && target.ok; ++t) {
    if (!in_filter(poset, candidate[t].support(poset))) {
      target.ok = false;
      target.witness = "support of " + render(sys, candidate[t]) + " is not in the filter";
    }
  }
  target.millis = ms_since(start);
  out.push_back(target);

  start = Clock::now();
  CheckResult maximal{"maximal", true, {}, 0.0};
  for (std::size_t t = 0; t < candidate.size() && maximal.ok; ++t) {
    std::string why;
    if (!is_consistent_set(sys, candidate[t], &why)) {
      maximal.ok = false;
      maximal.witness = render(sys, candidate[t]) + ": " + why;
    } else if (maximal_closure(sys, candidate[t]).members != candidate[t]) {
      maximal.ok = false;
      maximal.witness = render(sys, candidate[t]) + " is not maximal";
    }
  }
  maximal.millis = ms_since(start);
  out.push_back(maximal);

  start = Clock::now();
  CheckResult extensional{"extensional", true, {}, 0.0};
  for (std::size_t p = 0; p < candidate.size() && extensional.ok; ++p)
    for (std::size_t q = p + 1; q < candidate.size() && extensional.ok; ++q)
      if (equiv(sys, candidate[p], candidate[q])) {
        extensional.ok = false;
        extensional.witness = "elements " + std::to_string(p) + " and " + std::to_string(q) + " have ~ extensions";
      }
  extensional.millis = ms_since(start);
  out.push_back(extensional);

  // Every consistent set is ~ its maximal closure, so it suffices to find a
  // limit element for every dynamic element.
  start = Clock::now();
  CheckResult complete{"complete", true, {}, 0.0};
  for (const DynamicElement& e : elem(sys)) {
    bool found = false;
    for (const StateSet& c : candidate)
      if (equiv(sys, e.members, c)) {
        found = true;
        break;
      }
    if (!found) {
      complete.ok = false;
      complete.witness = render(sys, e) + " has no limit element";
      break;
    }
  }
  complete.millis = ms_since(start);
  out.push_back(complete);

  start = Clock::now();
  CheckResult ppmap{"ppmapeq", true, {}, 0.0};
  for (std::size_t t = 0; t < candidate.size() && ppmap.ok; ++t) {
    for (const State& later : candidate[t].states()) {
      for (const State& earlier : candidate[t].states())
        if (poset.le(earlier.index, later.index) && !sys.pred(later, earlier)) {
          ppmap.ok = false;
          ppmap.witness = sys.render(later) + " ~> " + sys.render(earlier) + " fails in element " + std::to_string(t);
          break;
        }
      if (!ppmap.ok) break;
    }
  }
  ppmap.millis = ms_since(start);
  out.push_back(ppmap);

  // Emb and Proj as derived for this candidate; a failure to derive them is
  // itself a violation.
  std::optional<TargetData> td;
  std::string derive_error;
  try {
    std::vector<std::string> names;
    for (std::size_t t = 0; t < candidate.size(); ++t) names.push_back(std::to_string(t));
    td = make_target(fs, names, candidate);
  } catch (const Error& e) {
    derive_error = e.what();
  }

  start = Clock::now();
  CheckResult embtar{"embtareq", true, {}, 0.0};
  if (!td) {
    embtar.ok = false;
    embtar.witness = derive_error;
  } else {
    for (const State& later : sys.states()) {
      for (const State& earlier : sys.states()) {
        if (!poset.le(earlier.index, later.index) || !sys.pred(later, earlier)) continue;
        const std::size_t t = td->emb[later.index][later.elem];
        if (!candidate[t].contains(earlier)) {
          embtar.ok = false;
          embtar.witness = "Emb(" + sys.render(later) + ") does not contain " + sys.render(earlier);
          break;
        }
      }
      if (!embtar.ok) break;
      for (Index k : poset.above(later.index)) {
        if (td->emb[k][fs.emb(later, k).elem] != td->emb[later.index][later.elem]) {
          embtar.ok = false;
          embtar.witness = "Emb(emb(" + sys.render(later) + ", " + poset.id(k) + ")) differs from Emb(" +
                           sys.render(later) + ")";
          break;
        }
      }
      if (!embtar.ok) break;
    }
  }
  embtar.millis = ms_since(start);
  out.push_back(embtar);

  start = Clock::now();
  CheckResult projtar{"projtareq", true, {}, 0.0};
  if (!td) {
    projtar.ok = false;
    projtar.witness = derive_error;
  } else {
    for (std::size_t t = 0; t < candidate.size() && projtar.ok; ++t) {
      for (const State& a : candidate[t].states()) {
        for (Index k : poset.above(a.index)) {
          const State p{k, td->proj[k][t]};
          if (!sys.pred(p, a)) {
            projtar.ok = false;
            projtar.witness = "Proj_" + poset.id(k) + "(" + std::to_string(t) + ") ~> " + sys.render(a) + " fails";
            break;
          }
          const State down = fs.proj(p, a.index);
          if (!consistent(sys, down, {a.index, td->proj[a.index][t]})) {
            projtar.ok = false;
            projtar.witness = "proj of Proj_" + poset.id(k) + "(" + std::to_string(t) + ") is not # Proj_" +
                              poset.id(a.index);
            break;
          }
        }
        if (!projtar.ok) break;
      }
    }
  }
  projtar.millis = ms_since(start);
  out.push_back(projtar);

  start = Clock::now();
  CheckResult eppair{"ep", true, {}, 0.0};
  if (!td) {
    eppair.ok = false;
    eppair.witness = derive_error;
  } else {
    for (const State& a : sys.states()) {
      for (Index k : poset.below(a.index)) {
        const State lhs{k, td->proj[k][td->emb[a.index][a.elem]]};
        if (!consistent(sys, lhs, fs.proj(a, k))) {
          eppair.ok = false;
          eppair.witness = "Proj_" + poset.id(k) + "(Emb(" + sys.render(a) + ")) is not # proj";
          break;
        }
      }
      if (!eppair.ok) break;
    }
  }
  eppair.millis = ms_since(start);
  out.push_back(eppair);
  return out;
}

std::vector<CheckResult> check_compactified_polarity(const FactorSystem& fs) {
  const IndexPoset& poset = fs.poset();
  const std::vector<DynamicElement> elements = elem(fs.sys);
  const FactorSystem bar = compactify(fs, limit_target(fs));
  std::vector<CheckResult> out;

  auto start = Clock::now();
  CheckResult stable{"stable", true, {}, 0.0};
  if (check_stable(fs.sys)) {
    std::string why;
    if (!check_stable(bar.sys, &why)) {
      stable.ok = false;
      stable.witness = why;
    }
  } else {
    stable.witness = "not stable; nothing to transfer";
  }
  stable.millis = ms_since(start);
  out.push_back(stable);

  start = Clock::now();
  CheckResult direct{"direct", true, {}, 0.0};
  if (check_direct(fs)) {
    std::string why;
    if (!check_direct(bar, &why)) {
      direct.ok = false;
      direct.witness = why;
    }
    for (const DynamicElement& e : elements) {
      if (!direct.ok) break;
      const IndexSet support = e.members.support(poset);
      bool has_up = false;
      for (Index i = 0; i < poset.size() && !has_up; ++i) has_up = up_set(poset, i).subset_of(support);
      if (!has_up) {
        direct.ok = false;
        direct.witness = "support of " + render(fs.sys, e) + " contains no up-set";
      }
    }
  } else {
    direct.witness = "not direct; nothing to transfer";
  }
  direct.millis = ms_since(start);
  out.push_back(direct);

  start = Clock::now();
  CheckResult inverse{"inverse", true, {}, 0.0};
  if (check_inverse(fs)) {
    std::string why;
    if (!check_inverse(bar, &why)) {
      inverse.ok = false;
      inverse.witness = why;
    }
    for (const DynamicElement& e : elements) {
      if (!inverse.ok) break;
      if (!(e.members.support(poset) == IndexSet::all(poset.size()))) {
        inverse.ok = false;
        inverse.witness = "support of " + render(fs.sys, e) + " is not every index";
      }
    }
  } else {
    inverse.witness = "not inverse; nothing to transfer";
  }
  inverse.millis = ms_since(start);
  out.push_back(inverse);

  start = Clock::now();
  CheckResult factor{"factor", true, {}, 0.0};
  {
    std::string why;
    if (is_factor_system(fs) && !is_factor_system(bar, &why)) {
      factor.ok = false;
      factor.witness = why;
    }
  }
  factor.millis = ms_since(start);
  out.push_back(factor);
  return out;
}

std::optional<std::vector<std::size_t>> limit_map(const System& sys, const std::vector<StateSet>& target_extensions) {
  const std::vector<DynamicElement> elements = elem(sys);
  std::vector<std::size_t> out;
  for (const StateSet& ext : target_extensions) {
    std::optional<std::size_t> hit;
    for (std::size_t e = 0; e < elements.size(); ++e) {
      if (!ext.subset_of(elements[e].members)) continue;
      if (hit) return std::nullopt;
      hit = e;
    }
    if (!hit) return std::nullopt;
    out.push_back(*hit);
  }
  return out;
}

FunctionTarget function_target(const FunctionSpace& space, std::size_t cap) {
  const System& fsys = space.system.sys;
  const IndexPoset& fposet = fsys.poset();
  const std::vector<DynamicElement> ms = elem(space.dom->sys);
  const std::vector<DynamicElement> ns = elem(space.cod->sys);

  auto relates = [&](const Table& f, State g) {
    const Index i = space.indices.left_of(g.index);
    const Index j = space.indices.right_of(g.index);
    for (std::size_t p = 0; p < ms.size(); ++p)
      for (const State& a : ms[p].members.at(i))
        if (!ns[f[p]].contains({j, space.apply(g.index, g.elem, a.elem)})) return false;
    return true;
  };

  FunctionTarget out;
  Table f(ms.size(), 0);
  while (!ns.empty()) {
    std::vector<State> ext;
    for (const State& g : fsys.states())
      if (relates(f, g)) ext.push_back(g);
    StateSet set(std::move(ext));
    if (in_filter(fposet, set.support(fposet))) {
      if (out.functions.size() == cap) throw Error(ErrorKind::SizeLimitExceeded, "too many limit functions");
      out.functions.push_back(f);
      out.extensions.push_back(std::move(set));
    }
    bool carried = true;
    for (std::size_t p = f.size(); p-- > 0 && carried;) {
      carried = ++f[p] == ns.size();
      if (carried) f[p] = 0;
    }
    if (carried) break;
  }
  return out;
}

IsoReport check_limit_funspace_iso(const FactorSystem& dom, const FactorSystem& cod, std::size_t cap) {
  auto m = std::make_shared<const FactorSystem>(dom);
  auto n = std::make_shared<const FactorSystem>(cod);
  const FunctionSpace space = build_funspace(m, n, cap);
  const System& fsys = space.system.sys;
  const IndexPoset& fposet = fsys.poset();
  const std::vector<DynamicElement> zetas = elem(fsys);
  const std::vector<DynamicElement> ms = elem(dom.sys);
  const std::vector<DynamicElement> ns = elem(cod.sys);

  IsoReport report;
  report.limit_count = zetas.size();
  FunctionTarget target = function_target(space, cap);
  const std::vector<Table>& functions = target.functions;
  std::vector<StateSet>& function_exts = target.extensions;
  report.function_count = functions.size();

  std::map<Table, std::size_t> function_pos;
  for (std::size_t q = 0; q < functions.size(); ++q) function_pos.emplace(functions[q], q);

  std::vector<std::size_t> phi;
  std::vector<char> hit(functions.size(), 0);
  report.bijective = zetas.size() == functions.size();
  for (std::size_t z = 0; z < zetas.size(); ++z) {
    Table f;
    for (const DynamicElement& alpha : ms) {
      auto pos = position_of(ns, app(space, zetas[z], alpha));
      if (!pos) throw Error(ErrorKind::NotInLimit, "application leaves elem of the codomain");
      f.push_back(*pos);
    }
    auto it = function_pos.find(f);
    if (it == function_pos.end()) {
      report.bijective = false;
      if (report.witness.empty()) report.witness = render(fsys, zetas[z]) + " maps outside the filtered functions";
      phi.push_back(0);
      continue;
    }
    if (hit[it->second]) {
      report.bijective = false;
      if (report.witness.empty()) report.witness = "two limit elements share an image";
    }
    hit[it->second] = 1;
    phi.push_back(it->second);
  }
  if (!report.bijective) {
    if (report.witness.empty()) report.witness = "cardinalities differ";
    return report;
  }

  std::vector<std::string> lnames, fnames;
  std::vector<StateSet> lexts;
  for (const DynamicElement& z : zetas) {
    lnames.push_back(render(fsys, z));
    lexts.push_back(z.members);
  }
  for (const Table& f : functions) {
    std::string name = "<";
    for (std::size_t p = 0; p < f.size(); ++p) {
      if (p) name += ',';
      name += std::to_string(f[p]);
    }
    fnames.push_back(name + ">");
  }
  const FactorSystem left = compactify(space.system, make_target(space.system, lnames, lexts));
  const FactorSystem right = compactify(space.system, make_target(space.system, fnames, function_exts));

  const Index top = fposet.size();
  std::vector<std::vector<std::size_t>> forward(top + 1), backward(top + 1);
  for (Index k = 0; k < top; ++k) {
    for (std::size_t e = 0; e < fsys.carrier_size(k); ++e) {
      forward[k].push_back(e);
      backward[k].push_back(e);
    }
  }
  forward[top] = phi;
  backward[top].assign(phi.size(), 0);
  for (std::size_t z = 0; z < phi.size(); ++z) backward[top][phi[z]] = z;

  const HomomorphismReport fw = check_homomorphism(left, right, forward);
  const HomomorphismReport bw = check_homomorphism(right, left, backward);
  report.hom_forward = fw.homomorphism && fw.strong;
  report.hom_backward = bw.homomorphism && bw.strong;
  if (!report.hom_forward) report.witness = "forward: " + fw.witness;
  else if (!report.hom_backward) report.witness = "backward: " + bw.witness;
  return report;
}

}  // namespace fls
