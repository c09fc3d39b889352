#include "fls/faults.hpp"

#include <random>

#include "fls/error.hpp"

namespace fls {

namespace {

// One corruptible entry: a pmap pair (later, earlier) or an ep table cell.
struct Site {
  State later;
  State earlier;
  Index to = 0;
  std::size_t value = 0;
};

std::vector<Site> sites(const FactorSystem& fs, const std::string& family) {
  const System& sys = fs.sys;
  const IndexPoset& p = fs.poset();
  std::vector<Site> out;
  if (family == "system") {
    for (State s : sys.states())
      if (sys.pred(s, s)) out.push_back({s, s});
  } else if (family == "factor") {
    for (State a2 : sys.states())
      for (State a : sys.states())
        if (a2.index != a.index && sys.pred(a2, a)) out.push_back({a2, a});
  } else if (family == "stab") {
    for (State a2 : sys.states())
      for (State a : sys.states())
        if (a2.index != a.index && a2.elem != a.elem && p.le(a.index, a2.index) && !sys.pred(a2, a))
          out.push_back({a2, a});
  } else if (family == "emb" || family == "proj" || family == "ep") {
    // Replacement values the laws rule out: off the diagonal, emb(a) must
    // stay a successor of a (Emb) and proj(a') a successor of every
    // predecessor of a' at or below the target (Proj); on it, proj(a) must
    // stay consistent with a.
    const bool up = family == "emb";
    for (State s : sys.states())
      for (Index to = 0; to < p.size(); ++to) {
        const bool diagonal = to == s.index;
        if ((family == "ep") != diagonal) continue;
        if (up ? !p.le(s.index, to) : !p.le(to, s.index)) continue;
        const std::size_t current = up ? fs.emb(s, to).elem : fs.proj(s, to).elem;
        for (std::size_t v = 0; v < sys.carrier_size(to); ++v) {
          if (v == current) continue;
          const State t{to, v};
          bool wrong = false;
          if (diagonal) {
            wrong = !consistent(sys, t, s);
          } else if (up) {
            wrong = !sys.pred(t, s);
          } else {
            for (State a : sys.states())
              if (p.le(a.index, to) && sys.pred(s, a) && !sys.pred(t, a)) wrong = true;
          }
          if (wrong) out.push_back({s, s, to, v});
        }
      }
  } else {
    throw Error(ErrorKind::UnknownLaw, family);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& fault_families() {
  static const std::vector<std::string> families{"system", "factor", "stab", "emb", "proj", "ep"};
  return families;
}

std::size_t fault_candidates(const FactorSystem& fs, const std::string& family) { return sites(fs, family).size(); }

std::string inject_fault(FactorSystem& fs, const std::string& family, std::uint64_t seed) {
  const auto candidates = sites(fs, family);
  if (candidates.empty()) throw Error(ErrorKind::InvalidSystem, "no entry of " + fs.name + " can carry a " + family + " fault");
  std::mt19937_64 rng(seed);
  const Site site = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
  System& sys = fs.sys;
  const IndexPoset& p = fs.poset();

  if (family == "system" || family == "factor") {
    sys.set_pred(site.later, site.earlier, false);
    return "removed " + sys.render(site.later) + " ~> " + sys.render(site.earlier);
  }
  if (family == "stab") {
    sys.set_pred(site.later, site.earlier, true);
    return "added " + sys.render(site.later) + " ~> " + sys.render(site.earlier);
  }
  const State s = site.later;
  const bool up = family == "emb";
  auto& table = up ? fs.ep.emb(s.index, site.to) : fs.ep.proj(s.index, site.to);
  const std::size_t old = table.at(s.elem);
  table[s.elem] = site.value;
  return std::string(up ? "emb " : "proj ") + p.id(s.index) + " -> " + p.id(site.to) + " sends " + sys.render(s) +
         " to " + sys.carrier(site.to)[table[s.elem]] + " instead of " + sys.carrier(site.to)[old];
}

}  // namespace fls
