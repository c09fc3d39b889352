#pragma once

// Brute-force oracles and random generators shared by the test suites.  The
// oracles deliberately avoid the library's bitset tables and closure
// shortcuts: they work from the raw predecessor relation only.

#include <cstdint>
#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "fls/factor_core.hpp"
#include "fls/fixtures.hpp"
#include "fls/index_poset.hpp"
#include "fls/limits.hpp"

namespace fls::testing {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

// -- posets ---------------------------------------------------------------

/// A random finite directed preorder on `n` ids "a".."": random pairs, an
/// occasional equivalent pair, and one extra index above everything when the
/// draw is not directed.
inline IndexPoset random_poset(Rng& rng, std::size_t max_n) {
  const std::size_t n = pick(rng, 1, max_n);
  std::vector<std::string> ids;
  for (std::size_t k = 0; k < n; ++k) ids.push_back(std::string(1, static_cast<char>('a' + k)));
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (coin(rng, 0.4)) pairs.emplace_back(ids[a], ids[b]);
  if (n >= 2 && coin(rng, 0.2)) pairs.emplace_back(ids[n - 1], ids[n - 2]);
  try {
    return IndexPoset::closure(ids, pairs);
  } catch (const Error&) {
    for (std::size_t a = 0; a + 1 < n; ++a) pairs.emplace_back(ids[a], ids[n - 1]);
    return IndexPoset::closure(ids, pairs);
  }
}

/// Top class by definition: indices above every index.
inline std::vector<Index> oracle_tops(const IndexPoset& p) {
  std::vector<Index> out;
  for (Index t = 0; t < p.size(); ++t) {
    bool all = true;
    for (Index i = 0; i < p.size(); ++i) all = all && p.le(i, t);
    if (all) out.push_back(t);
  }
  return out;
}

/// Filter membership through the top class.
inline bool oracle_in_filter(const IndexPoset& p, const IndexSet& h) {
  for (Index t : oracle_tops(p))
    if (!h.contains(t)) return false;
  return true;
}

// -- systems --------------------------------------------------------------

/// Height of an index: number of strictly smaller equivalence classes on a
/// longest chain below it.
inline std::vector<std::size_t> heights(const IndexPoset& p) {
  std::vector<std::size_t> h(p.size(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (Index a = 0; a < p.size(); ++a)
      for (Index b = 0; b < p.size(); ++b)
        if (p.le(a, b) && !p.le(b, a) && h[b] < h[a] + 1) {
          h[b] = h[a] + 1;
          changed = true;
        }
  }
  return h;
}

enum class Kind { Direct, Inverse, Chaos };

/// A random factor system over `poset`.  Carriers grow with height; the
/// maps come from a chain of injections (Direct) or surjections (Inverse),
/// each with a one-sided inverse, and ~> is read off them as in the standard
/// direct and inverse constructions.  Chaos relates every comparable pair.
inline FactorSystem random_system(Rng& rng, const IndexPoset& poset, Kind kind, std::size_t max_size = 3) {
  const std::vector<std::size_t> h = heights(poset);
  std::size_t levels = 0;
  for (auto x : h) levels = std::max(levels, x + 1);
  std::vector<std::size_t> size(levels);
  size[0] = pick(rng, 1, max_size);
  for (std::size_t l = 1; l < levels; ++l) size[l] = pick(rng, size[l - 1], std::max(size[l - 1], max_size));

  // up[l][x]: level l -> l+1, down[l][y]: level l+1 -> l, with down o up = id.
  std::vector<std::vector<std::size_t>> up(levels), down(levels);
  for (std::size_t l = 0; l + 1 < levels; ++l) {
    std::vector<std::size_t> targets(size[l + 1]);
    for (std::size_t y = 0; y < targets.size(); ++y) targets[y] = y;
    std::shuffle(targets.begin(), targets.end(), rng);
    up[l].assign(targets.begin(), targets.begin() + static_cast<std::ptrdiff_t>(size[l]));
    down[l].assign(size[l + 1], 0);
    for (std::size_t x = 0; x < size[l]; ++x) down[l][up[l][x]] = x;
    for (std::size_t y = 0; y < size[l + 1]; ++y) {
      bool hit = false;
      for (std::size_t x = 0; x < size[l]; ++x) hit = hit || up[l][x] == y;
      if (!hit) down[l][y] = pick(rng, 0, size[l] - 1);
    }
  }
  auto lift = [&](std::size_t from, std::size_t to, std::size_t x) {
    for (std::size_t l = from; l < to; ++l) x = up[l][x];
    return x;
  };
  auto drop = [&](std::size_t from, std::size_t to, std::size_t y) {
    for (std::size_t l = from; l-- > to;) y = down[l][y];
    return y;
  };

  std::vector<std::vector<std::string>> carriers;
  for (Index k = 0; k < poset.size(); ++k) {
    std::vector<std::string> c;
    for (std::size_t x = 0; x < size[h[k]]; ++x) c.push_back("e" + std::to_string(x));
    carriers.push_back(c);
  }
  System sys(poset, carriers);
  EpData ep(poset.size());
  for (Index i = 0; i < poset.size(); ++i)
    for (Index i2 = 0; i2 < poset.size(); ++i2) {
      if (!poset.le(i, i2)) continue;
      for (std::size_t a = 0; a < size[h[i]]; ++a) ep.emb(i, i2).push_back(lift(h[i], h[i2], a));
      for (std::size_t a2 = 0; a2 < size[h[i2]]; ++a2) ep.proj(i2, i).push_back(drop(h[i2], h[i], a2));
      for (std::size_t a2 = 0; a2 < size[h[i2]]; ++a2)
        for (std::size_t a = 0; a < size[h[i]]; ++a) {
          bool rel = false;
          switch (kind) {
            case Kind::Direct: rel = lift(h[i], h[i2], a) == a2; break;
            case Kind::Inverse: rel = drop(h[i2], h[i], a2) == a; break;
            case Kind::Chaos: rel = true; break;
          }
          if (rel) sys.set_pred({i2, a2}, {i, a}, true);
        }
    }
  const char* tag = kind == Kind::Direct ? "dir" : kind == Kind::Inverse ? "inv" : "chaos";
  return FactorSystem{std::string("rand_") + tag, std::move(sys), std::move(ep)};
}

/// Every element duplicated into two #-equal copies; all structure ignores
/// the copy bit.  Keeps every factor law while breaking (Fun).
inline FactorSystem doubled(const FactorSystem& fs) {
  const IndexPoset& p = fs.poset();
  std::vector<std::vector<std::string>> carriers;
  for (Index k = 0; k < p.size(); ++k) {
    std::vector<std::string> c;
    for (const auto& name : fs.sys.carrier(k)) {
      c.push_back(name + "'0");
      c.push_back(name + "'1");
    }
    carriers.push_back(c);
  }
  System sys(p, carriers);
  EpData ep(p.size());
  for (Index i = 0; i < p.size(); ++i)
    for (Index i2 = 0; i2 < p.size(); ++i2) {
      if (!p.le(i, i2)) continue;
      for (std::size_t x = 0; x < 2 * fs.sys.carrier_size(i); ++x)
        ep.emb(i, i2).push_back(2 * fs.ep.emb(i, i2)[x / 2] + x % 2);
      for (std::size_t y = 0; y < 2 * fs.sys.carrier_size(i2); ++y)
        ep.proj(i2, i).push_back(2 * fs.ep.proj(i2, i)[y / 2] + y % 2);
      for (std::size_t y = 0; y < 2 * fs.sys.carrier_size(i2); ++y)
        for (std::size_t x = 0; x < 2 * fs.sys.carrier_size(i); ++x)
          if (fs.sys.pred({i2, y / 2}, {i, x / 2})) sys.set_pred({i2, y}, {i, x}, true);
    }
  return FactorSystem{fs.name + "_x2", std::move(sys), std::move(ep)};
}

// -- oracles on systems ---------------------------------------------------

inline bool oracle_consistent(const System& sys, State a, State b) {
  const IndexPoset& p = sys.poset();
  for (Index k = 0; k < p.size(); ++k) {
    if (!p.le(a.index, k) || !p.le(b.index, k)) continue;
    for (std::size_t c = 0; c < sys.carrier_size(k); ++c)
      if (sys.pred({k, c}, a) && sys.pred({k, c}, b)) return true;
  }
  return false;
}

inline bool oracle_consistent_set(const System& sys, const std::vector<State>& set) {
  const IndexPoset& p = sys.poset();
  for (State x : set)
    for (State y : set)
      if (p.le(y.index, x.index) && !sys.pred(x, y)) return false;
  IndexSet support(p.size());
  for (State x : set) support.insert(x.index);
  return oracle_in_filter(p, support);
}

/// Every consistent set, by subset enumeration over all states.
inline std::vector<std::vector<State>> oracle_consistent_sets(const System& sys) {
  const std::vector<State> all = sys.states();
  std::vector<std::vector<State>> out;
  const std::uint64_t limit = std::uint64_t{1} << all.size();
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    std::vector<State> set;
    for (std::size_t b = 0; b < all.size(); ++b)
      if (mask >> b & 1) set.push_back(all[b]);
    if (oracle_consistent_set(sys, set)) out.push_back(std::move(set));
  }
  return out;
}

/// Maximal consistent sets by subset search: consistent sets to which no
/// further state can be added.
inline std::vector<std::vector<State>> oracle_elem(const System& sys) {
  std::vector<std::vector<State>> out;
  const std::vector<State> all = sys.states();
  for (const auto& s : oracle_consistent_sets(sys)) {
    bool maximal = true;
    for (State x : all) {
      if (std::find(s.begin(), s.end(), x) != s.end()) continue;
      std::vector<State> bigger = s;
      bigger.push_back(x);
      if (oracle_consistent_set(sys, bigger)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<FactorSystem> small_fixtures() {
  using namespace fixtures;
  return {prop(), nat_dir(2), nat_inv(2), nat_chaos(2), nat_dir(3), nat_inv(3), nat_chaos(3),
          nat_dir(4), nat_inv(4), nat_chaos(4)};
}

}  // namespace fls::testing

namespace fls::testing {

/// Outcome of a brute-force lemma suite: how many cases were compared and
/// the first disagreement, if any.
struct SuiteResult {
  std::size_t cases = 0;
  std::size_t disagreements = 0;
  std::string first;
};

using Mask = std::uint64_t;

inline Mask mask_of(const System& sys, const std::vector<State>& set) {
  Mask m = 0;
  for (State s : set) m |= Mask{1} << sys.state_id(s);
  return m;
}

/// The five characterisations of b_i in alpha^m, for every consistent set
/// alpha and every state b_i.  Clause 1 goes through maximal_closure.
inline SuiteResult elemlem_suite(const System& sys) {
  SuiteResult r;
  const IndexPoset& p = sys.poset();
  const std::vector<State> all = sys.states();
  for (const auto& alpha : oracle_consistent_sets(sys)) {
    const StateSet closure = maximal_closure(sys, StateSet(alpha)).members;
    for (State b : all) {
      IndexSet witnesses(p.size());
      bool c4 = true;
      for (State a : alpha) {
        if (!p.le(b.index, a.index)) continue;
        if (sys.pred(a, b)) witnesses.insert(a.index);
        else c4 = false;
      }
      std::vector<State> extended = alpha;
      if (std::find(extended.begin(), extended.end(), b) == extended.end()) extended.push_back(b);
      const bool c1 = closure.contains(b);
      const bool c2 = oracle_consistent_set(sys, extended);
      const bool c3 = is_cofinal(p, witnesses);
      const bool c5 = oracle_in_filter(p, witnesses);
      ++r.cases;
      if (!(c1 == c2 && c2 == c3 && c3 == c4 && c4 == c5)) {
        if (r.disagreements++ == 0) {
          r.first = render(sys, StateSet(alpha)) + " / " + sys.render(b) + ": " + std::to_string(c1) +
                    std::to_string(c2) + std::to_string(c3) + std::to_string(c4) + std::to_string(c5);
        }
      }
    }
  }
  return r;
}

/// The three characterisations of alpha ~ beta over all pairs of consistent
/// sets.  Clause 1 compares maximal closures; clauses 2 and 3 use
/// precomputed consistency masks, and the library's `equiv` is compared with
/// clause 2 on a fixed stride of the pairs.
inline SuiteResult elemlem2_suite(const System& sys) {
  SuiteResult r;
  const std::vector<State> all = sys.states();
  if (all.size() > 64) throw Error(ErrorKind::SizeLimitExceeded, "too many states for mask oracle");
  std::vector<Mask> comp_any(all.size(), 0), comp_same(all.size(), 0), same_index(all.size(), 0);
  for (std::size_t x = 0; x < all.size(); ++x)
    for (std::size_t y = 0; y < all.size(); ++y) {
      const bool c = oracle_consistent(sys, all[x], all[y]);
      if (c) comp_any[x] |= Mask{1} << y;
      if (all[x].index == all[y].index) {
        same_index[x] |= Mask{1} << y;
        if (c) comp_same[x] |= Mask{1} << y;
      }
    }
  const auto sets = oracle_consistent_sets(sys);
  std::vector<Mask> masks, allowed2, allowed3;
  std::vector<std::size_t> closure_id;
  std::vector<StateSet> closures;
  for (const auto& alpha : sets) {
    const Mask m = mask_of(sys, alpha);
    Mask a2 = ~Mask{0}, a3 = ~Mask{0};
    for (std::size_t x = 0; x < all.size(); ++x) {
      if (!(m >> x & 1)) continue;
      a2 &= comp_same[x] | ~same_index[x];
      a3 &= comp_any[x];
    }
    masks.push_back(m);
    allowed2.push_back(a2);
    allowed3.push_back(a3);
    StateSet c = maximal_closure(sys, StateSet(alpha)).members;
    auto it = std::find(closures.begin(), closures.end(), c);
    closure_id.push_back(static_cast<std::size_t>(it - closures.begin()));
    if (it == closures.end()) closures.push_back(std::move(c));
  }
  const std::size_t n = sets.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const bool c1 = closure_id[a] == closure_id[b];
      const bool c2 = (masks[b] & ~allowed2[a]) == 0;
      const bool c3 = (masks[b] & ~allowed3[a]) == 0;
      ++r.cases;
      bool ok = c1 == c2 && c2 == c3;
      if (ok && (a * n + b) % 97 == 0) ok = equiv(sys, StateSet(sets[a]), StateSet(sets[b])) == c2;
      if (!ok && r.disagreements++ == 0)
        r.first = render(sys, StateSet(sets[a])) + " vs " + render(sys, StateSet(sets[b]));
    }
  return r;
}

}  // namespace fls::testing
