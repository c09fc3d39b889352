#include "doctest.h"

#include "fls/error.hpp"
#include "fls/fixtures.hpp"
#include "fls/limits.hpp"
#include "support.hpp"

using namespace fls;
using namespace fls::fixtures;
using fls::testing::Kind;
using fls::testing::Rng;

namespace {

StateSet states(const FactorSystem& fs, std::initializer_list<const char*> text) {
  std::vector<State> out;
  for (std::string t : text) {
    const auto at = t.find('@');
    out.push_back(fs.sys.find_state(t.substr(at + 1), t.substr(0, at)));
  }
  return StateSet(out);
}

std::vector<StateSet> members_of(const std::vector<DynamicElement>& es) {
  std::vector<StateSet> out;
  for (const auto& e : es) out.push_back(e.members);
  return out;
}

void check_elem_against_oracle(const FactorSystem& fs) {
  CAPTURE(fs.name);
  std::vector<StateSet> expected;
  for (const auto& s : fls::testing::oracle_elem(fs.sys)) expected.push_back(StateSet(s));
  std::sort(expected.begin(), expected.end());
  CHECK(members_of(elem(fs.sys)) == expected);
}

}  // namespace

TEST_CASE("consistent sets") {
  auto d = nat_dir(3);
  CHECK(is_consistent_set(d.sys, states(d, {"0@1", "0@2", "0@3"})));
  CHECK(is_consistent_set(d.sys, states(d, {"1@2", "1@3"})));
  CHECK_FALSE(is_consistent_set(d.sys, states(d, {"0@1", "1@2"})));
  CHECK_FALSE(is_consistent_set(d.sys, states(d, {"0@1", "0@2"})));
}

TEST_CASE("maximal closure") {
  auto d = nat_dir(3);
  CHECK(maximal_closure(d.sys, states(d, {"1@3"})).members == states(d, {"1@2", "1@3"}));
  // {0@2} misses the top index, so it is not a consistent set; the one
  // dynamic element containing it is found among elem.
  CHECK_THROWS_AS(maximal_closure(d.sys, states(d, {"0@2"})), Error);
  std::size_t containing = 0;
  for (const auto& e : elem(d.sys))
    if (states(d, {"0@2"}).subset_of(e.members)) {
      ++containing;
      CHECK(e.members == states(d, {"0@1", "0@2", "0@3"}));
    }
  CHECK(containing == 1);
  auto i = nat_inv(3);
  CHECK(maximal_closure(i.sys, states(i, {"2@3"})).members == states(i, {"0@1", "1@2", "2@3"}));
  try {
    maximal_closure(d.sys, states(d, {"0@1", "1@2"}));
    FAIL("expected NotConsistent");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotConsistent);
  }
}

TEST_CASE("closure is the unique maximal extension") {
  for (const auto& fs : {nat_dir(3), nat_inv(3), nat_chaos(3), prop()}) {
    const auto maximal = fls::testing::oracle_elem(fs.sys);
    for (const auto& alpha : fls::testing::oracle_consistent_sets(fs.sys)) {
      std::size_t containing = 0;
      for (const auto& m : maximal)
        if (std::includes(m.begin(), m.end(), alpha.begin(), alpha.end())) ++containing;
      CHECK(containing == 1);
      const StateSet c = maximal_closure(fs.sys, StateSet(alpha)).members;
      CHECK(std::find(maximal.begin(), maximal.end(), c.states()) != maximal.end());
      CHECK(StateSet(alpha).subset_of(c));
    }
  }
}

TEST_CASE("elem counts on the natural numbers") {
  for (int n : {2, 3, 4}) {
    CHECK(elem(nat_dir(n).sys).size() == static_cast<std::size_t>(n));
    CHECK(elem(nat_inv(n).sys).size() == static_cast<std::size_t>(n));
    CHECK(elem(nat_chaos(n).sys).size() == 1);
  }
  CHECK(elem(prop().sys).size() == 2);
  auto i = nat_inv(3);
  const auto es = elem(i.sys);
  CHECK(std::find(es.begin(), es.end(), DynamicElement{states(i, {"0@1", "1@2", "2@3"})}) != es.end());
}

TEST_CASE("elem agrees with subset search") {
  for (const auto& fs : fls::testing::small_fixtures()) check_elem_against_oracle(fs);
  Rng rng(31);
  for (int round = 0; round < 60; ++round) {
    auto fs = fls::testing::random_system(rng, fls::testing::random_poset(rng, 4), Kind(fls::testing::pick(rng, 0, 2)), 3);
    if (fs.sys.state_count() > 16) continue;
    check_elem_against_oracle(fs);
    if (fs.sys.state_count() <= 8) check_elem_against_oracle(fls::testing::doubled(fs));
  }
}

TEST_CASE("equivalence of consistent sets") {
  auto d = nat_dir(3);
  CHECK(equiv(d.sys, states(d, {"0@2"}), states(d, {"0@1", "0@3"})));
  CHECK_FALSE(equiv(d.sys, states(d, {"0@2"}), states(d, {"1@2", "1@3"})));
  CHECK(equiv(d.sys, states(d, {"1@3"}), states(d, {"1@3"})));
}

TEST_CASE("lemma clauses agree on small fixtures") {
  for (const auto& fs : {nat_dir(3), nat_inv(3), nat_chaos(3), prop()}) {
    CAPTURE(fs.name);
    auto a = fls::testing::elemlem_suite(fs.sys);
    CHECK_MESSAGE(a.disagreements == 0, a.first);
    CHECK(a.cases > 0);
    auto b = fls::testing::elemlem2_suite(fs.sys);
    CHECK_MESSAGE(b.disagreements == 0, b.first);
  }
}

TEST_CASE("limit embeddings and projections") {
  auto d = nat_dir(3);
  auto one2 = d.sys.find_state("2", "1");
  CHECK(emb_limit(d, one2).members == states(d, {"1@2", "1@3"}));
  auto p = prop();
  CHECK(emb_limit(p, p.sys.find_state("p", "true")).members == states(p, {"true@p"}));
  auto c = nat_chaos(3);
  CHECK(emb_limit(c, c.sys.find_state("1", "0")) == elem(c.sys).front());

  auto i = nat_inv(3);
  const DynamicElement infinity{states(i, {"0@1", "1@2", "2@3"})};
  CHECK(proj_limit(i, i.poset().find("2"), infinity) == i.sys.find_state("2", "1"));
  const DynamicElement zero = emb_limit(d, d.sys.find_state("1", "0"));
  CHECK(zero.members == states(d, {"0@1", "0@2", "0@3"}));
  CHECK(proj_limit(d, d.poset().find("3"), zero) == d.sys.find_state("3", "0"));
}

TEST_CASE("projections of embeddings and uniqueness of projections") {
  for (const auto& fs : fls::testing::small_fixtures()) {
    CAPTURE(fs.name);
    const auto& p = fs.poset();
    for (State a : fs.sys.states()) {
      const DynamicElement e = emb_limit(fs, a);
      CHECK(e.contains(a));
      for (Index i : p.below(a.index)) CHECK(consistent(fs.sys, proj_limit(fs, i, e), fs.proj(a, i)));
    }
    for (const auto& e : elem(fs.sys))
      for (Index i = 0; i < p.size(); ++i) CHECK(proj_limit_unique(fs, i, e));
  }
}

TEST_CASE("application") {
  auto pp = std::make_shared<const FactorSystem>(prop());
  auto space = build_funspace(pp, pp);
  const auto zetas = elem(space.system.sys);
  CHECK(zetas.size() == 4);
  const Index k = 0;
  const auto neg = space.system.sys.find_element(k, "{false:true,true:false}");
  REQUIRE(neg);
  const DynamicElement zeta = maximal_closure(space.system.sys, StateSet({{k, *neg}}));
  const DynamicElement t = emb_limit(*pp, pp->sys.find_state("p", "true"));
  const DynamicElement f = emb_limit(*pp, pp->sys.find_state("p", "false"));
  CHECK(app(space, zeta, t) == f);

  auto nd = std::make_shared<const FactorSystem>(nat_dir(2));
  auto space2 = build_funspace(nd, pp);
  const auto& poset = space2.indices.poset();
  const Index lo = poset.find("1->p");
  const auto g = space2.system.sys.find_element(lo, "{0:true}");
  REQUIRE(g);
  const DynamicElement zeta2 = emb_limit(space2.system, {lo, *g});
  const DynamicElement alpha = maximal_closure(nd->sys, states(*nd, {"0@1", "0@2"}));
  CHECK(app(space2, zeta2, alpha) == t);
  CHECK(app_raw(space2, zeta2.members, alpha.members).states() == std::vector<State>{{0, 1}});
}

TEST_CASE("application is extensional") {
  std::vector<FactorSystem> small{prop(), nat_dir(2), nat_inv(2), nat_chaos(2)};
  for (const auto& m : small)
    for (const auto& n : small) {
      auto space = build_funspace(m, n);
      const auto zetas = elem(space.system.sys);
      const auto alphas = elem(m.sys);
      for (std::size_t a = 0; a < zetas.size(); ++a)
        for (std::size_t b = a + 1; b < zetas.size(); ++b) {
          bool differ = false;
          for (const auto& alpha : alphas) differ = differ || app(space, zetas[a], alpha) != app(space, zetas[b], alpha);
          CHECK(differ);
        }
    }
}

TEST_CASE("target laws") {
  for (const auto& fs : fls::testing::small_fixtures()) {
    CAPTURE(fs.name);
    const auto results = check_target_laws(fs, members_of(elem(fs.sys)));
    for (const auto& r : results) CHECK_MESSAGE(r.ok, (r.name + ": " + r.witness));
  }
  auto d = nat_dir(3);
  auto cand = members_of(elem(d.sys));
  auto removed = cand;
  removed.pop_back();
  auto verdict = [](const std::vector<CheckResult>& rs, const std::string& name) {
    for (const auto& r : rs)
      if (r.name == name) return r.ok;
    FAIL("missing result " << name);
    return false;
  };
  CHECK_FALSE(verdict(check_target_laws(d, removed), "complete"));
  auto duplicated = cand;
  duplicated.push_back(cand.front());
  CHECK_FALSE(verdict(check_target_laws(d, duplicated), "extensional"));
  auto shrunk = cand;
  shrunk[0] = StateSet({shrunk[0].states().back()});
  CHECK_FALSE(verdict(check_target_laws(d, shrunk), "maximal"));
}

TEST_CASE("compactification keeps polarity") {
  for (const auto& fs : fls::testing::small_fixtures()) {
    CAPTURE(fs.name);
    for (const auto& r : check_compactified_polarity(fs)) CHECK_MESSAGE(r.ok, (r.name + ": " + r.witness));
  }
  auto d = nat_dir(3);
  const auto e = maximal_closure(d.sys, states(d, {"2@3"}));
  CHECK(e.members.support(d.poset()) == up_set(d.poset(), d.poset().find("3")));
  auto i = nat_inv(3);
  for (const auto& x : elem(i.sys)) CHECK(x.members.support(i.poset()) == IndexSet::all(3));
  Rng rng(41);
  for (int round = 0; round < 30; ++round) {
    auto fs = fls::testing::random_system(rng, fls::testing::random_poset(rng, 4), Kind(fls::testing::pick(rng, 0, 2)), 3);
    CAPTURE(fs.name);
    for (const auto& r : check_compactified_polarity(fs)) CHECK_MESSAGE(r.ok, (r.name + ": " + r.witness));
  }
}

TEST_CASE("alternative presentations of a limit") {
  // nat_dir_3 described by hand: three numbers with their stage copies.
  auto d = nat_dir(3);
  const std::vector<StateSet> by_hand{states(d, {"2@3"}), states(d, {"0@1", "0@2", "0@3"}), states(d, {"1@2", "1@3"})};
  auto map = limit_map(d.sys, by_hand);
  REQUIRE(map);
  std::vector<std::size_t> sorted = *map;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<std::size_t>{0, 1, 2});
  for (const auto& r : check_target_laws(d, by_hand)) CHECK_MESSAGE(r.ok, (r.name + ": " + r.witness));

  // The target of all consistent sets maps onto elem by closure.
  const auto sets = fls::testing::oracle_consistent_sets(d.sys);
  std::vector<StateSet> exts;
  for (const auto& s : sets) exts.push_back(StateSet(s));
  auto onto = limit_map(d.sys, exts);
  REQUIRE(onto);
  const auto es = elem(d.sys);
  for (std::size_t t = 0; t < exts.size(); ++t) CHECK(es[(*onto)[t]] == maximal_closure(d.sys, exts[t]));

  // An extension that does not pin down a limit element has no image.
  CHECK_FALSE(limit_map(d.sys, {StateSet()}));
  auto c = nat_chaos(3);
  CHECK(limit_map(c.sys, {StateSet()}));
}

TEST_CASE("limit of the function space") {
  struct Case {
    FactorSystem m, n;
    std::size_t count;
  };
  for (const auto& c : {Case{nat_dir(2), prop(), 4}, Case{prop(), prop(), 4}, Case{nat_chaos(2), prop(), 2}}) {
    CAPTURE(c.m.name);
    const IsoReport r = check_limit_funspace_iso(c.m, c.n);
    CHECK(r.limit_count == c.count);
    CHECK(r.function_count == c.count);
    CHECK_MESSAGE(r.ok(), r.witness);
  }
  for (const auto& m : {nat_inv(2), nat_dir(3), nat_inv(3)})
    for (const auto& n : {prop(), nat_dir(2), nat_inv(2)}) {
      CAPTURE(m.name);
      CAPTURE(n.name);
      const IsoReport r = check_limit_funspace_iso(m, n);
      CHECK_MESSAGE(r.ok(), r.witness);
    }
}

TEST_CASE("function-space targets are maximal, extensional and complete") {
  for (const auto& m : {nat_dir(2), nat_inv(2), prop()})
    for (const auto& n : {prop(), nat_inv(2)}) {
      auto space = build_funspace(m, n);
      const FunctionTarget ft = function_target(space);
      CHECK(ft.functions.size() == elem(space.system.sys).size());
      for (const auto& r : check_target_laws(space.system, ft.extensions))
        CHECK_MESSAGE(r.ok, (r.name + ": " + r.witness));
    }
}
